#pragma once

// JSON views of library results, used by the command-line tool.

#include <papc/bounds.hpp>
#include <papc/completion.hpp>
#include <papc/incidence.hpp>
#include <papc/inversive.hpp>
#include <papc/oracle.hpp>
#include <papc/parallelism.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace papc::report {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "papc.report/1";

inline Json envelope(const std::string& command) {
  return Json{{"schema", kSchema}, {"command", command}};
}

inline Json blocks_json(const std::vector<Block>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(b);
  return out;
}

inline Json histogram(const std::map<std::size_t, std::size_t>& h, const char* key) {
  Json out = Json::array();
  for (auto [value, count] : h) out.push_back({{key, value}, {"count", count}});
  return out;
}

inline Json structure_stats(const IncidenceStructure& s) {
  std::map<std::size_t, std::size_t> val;
  std::map<std::size_t, std::size_t> sizes;
  for (Point p = 0; p < s.num_points(); ++p) ++val[valency(s, p)];
  for (const auto& b : s.blocks()) ++sizes[b.size()];
  Json j{{"points", s.num_points()},
         {"blocks", s.num_blocks()},
         {"valency_histogram", histogram(val, "valency")},
         {"block_size_histogram", histogram(sizes, "size")}};
  if (auto n = pap_order(s))
    j["pap_order"] = *n;
  else
    j["pap_order"] = nullptr;
  return j;
}

inline Json to_json(const ParallelClassification& pc) {
  Json sizes = Json::array();
  for (const auto& c : pc.classes) sizes.push_back(c.size());
  Json j{{"is_equivalence", pc.is_equivalence}, {"class_count", pc.class_count()}, {"class_sizes", sizes}};
  if (pc.witness)
    j["witness"] = {{"line", pc.witness->line},
                    {"point", pc.witness->point},
                    {"first", pc.witness->first},
                    {"second", pc.witness->second}};
  else
    j["witness"] = nullptr;
  return j;
}

inline Json to_json(const StructureBoundsReport& r) {
  return {{"n", r.n},
          {"a", r.a},
          {"smallest_class", r.smallest_class},
          {"low_valency_points", r.low_valency_points},
          {"class_bound_holds", r.class_bound_holds},
          {"point_bound_holds", r.point_bound_holds},
          {"holds", r.holds()}};
}

inline Json to_json(const BoundReport& r) {
  Json g = Json::array();
  for (auto x : r.g) g.push_back(x);
  return {{"n", r.n},
          {"g", g},
          {"which_min", r.which_min},
          {"g_min", r.g_min},
          {"f", r.f},
          {"f_ceil", r.f_ceil},
          {"f_is_integer", r.f_is_integer},
          {"threshold_root_n", {{"value", r.threshold_root_n}, {"least_lines", r.least_lines_root_n}}},
          {"threshold_f", {{"value", r.threshold_f}, {"least_lines", r.least_lines_f}}},
          {"threshold_g", {{"value", r.g_min - 1}, {"least_lines", r.least_lines_g}}},
          {"remark_check", {{"root_n_dominates", r.remark.root_n_dominates}, {"f_dominates", r.remark.f_dominates}}}};
}

inline Json to_json(const DegreeCertificate& c) {
  Json j{{"n", c.n},
         {"b", c.b},
         {"sum_d", c.sum_d},
         {"sum_d_d_minus_1", c.sum_d_d_minus_1},
         {"incidence_sum_holds", c.incidence_sum_holds},
         {"pair_sum_holds", c.pair_sum_holds}};
  if (c.has_context)
    j["excess_bound"] = {{"k", c.k},
                         {"e", c.e},
                         {"f0", c.f0},
                         {"lhs", c.excess_lhs},
                         {"rhs", c.excess_rhs},
                         {"applicable", c.excess_applicable},
                         {"holds", c.excess_holds}};
  return j;
}

inline Json to_json(const CompletionResult& r) {
  return {{"method", std::string(to_string(r.method))},
          {"added_count", r.added_blocks.size()},
          {"added_blocks", blocks_json(r.added_blocks)},
          {"certificate", r.certificate},
          {"completed", structure_stats(r.completed)}};
}

inline Json to_json(const OracleOutcome& o) {
  Json j{{"completions_found", o.completions_found},
         {"exhausted", o.exhausted},
         {"budget_exhausted", o.budget_exhausted},
         {"nodes", o.nodes},
         {"certifies_none", o.certifies_none()}};
  if (o.first_completion)
    j["first_completion"] = to_json(*o.first_completion);
  else
    j["first_completion"] = nullptr;
  return j;
}

inline Json to_json(const DerivedCompletion& dc, std::size_t n) {
  Json j{{"point", dc.base_point},
         {"derived_lines", dc.derived.structure.num_blocks()},
         {"added_lines", blocks_json(dc.added_lines_global)},
         {"simple_points", dc.simple_points},
         {"max_added_through", dc.max_added_through()},
         {"method", std::string(to_string(dc.method))},
         {"condition_i", check_condition_i(dc, n)},
         {"condition_ii", check_condition_ii(dc)}};
  if (dc.unique)
    j["unique"] = *dc.unique;
  else
    j["unique"] = nullptr;
  return j;
}

}  // namespace papc::report
