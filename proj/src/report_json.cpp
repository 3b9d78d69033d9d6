#include "kdual/report_json.hpp"

namespace kdual {

using nlohmann::json;

json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

namespace {

json int_list(const std::vector<Int>& xs) {
  json out = json::array();
  for (const Int& x : xs) out.push_back(to_json(x));
  return out;
}

}  // namespace

json to_json(const FgaGroup& g) {
  json torsion = json::object();
  for (const auto& c : g.torsion()) torsion[c.prime.get_str()] = c.exponents;
  return {{"free", g.free_rank()}, {"torsion", torsion}};
}

json to_json(const GroupElement& e) { return {{"torsion", int_list(e.torsion_coords())}, {"free", int_list(e.free_coords())}}; }

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const KPair& p) { return {{"k0", to_json(p.k0)}, {"k1", to_json(p.k1)}}; }

json to_json(const KTriple& t) { return {{"k0", to_json(t.k0())}, {"unit", to_json(t.unit())}, {"k1", to_json(t.k1())}}; }

json to_json(const HomotopyProfile& h) { return {{"pi_odd", to_json(h.pi_odd)}, {"pi_even", to_json(h.pi_even)}}; }

json to_json(const PExponentProfile& p) {
  return {{"p", to_json(p.p)}, {"exponents", p.exponents}, {"length", p.length()}, {"max_exp", p.max_exp()}};
}

std::string to_string(NormalFormMode m) {
  switch (m) {
    case NormalFormMode::Finite: return "FINITE";
    case NormalFormMode::Augmented: return "AUGMENTED";
    case NormalFormMode::AugmentedReducible: return "AUGMENTED_REDUCIBLE";
  }
  return "FINITE";
}

json to_json(const NormalFormData& d) {
  json out = {{"p", to_json(d.p)}, {"l", d.l},   {"untouched", d.untouched},
              {"k", d.k},          {"r", d.r},   {"mode", to_string(d.mode)}};
  if (d.witness) {
    json images = json::array();
    for (const auto& img : d.witness->images) images.push_back(int_list(img));
    out["witness"] = {{"images", images}, {"normalized", int_list(d.witness->normalized)}};
  }
  return out;
}

json to_json(const VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"input", f.input}, {"expected", f.expected}, {"actual", f.actual}});
  return {{"suite", r.suite},
          {"passed", r.passed()},
          {"cases_checked", r.cases_checked},
          {"failure_count", r.failure_count},
          {"failures", failures},
          {"elapsed_seconds", r.elapsed.count()}};
}

}  // namespace kdual
