#include "twc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "twc/errors.hpp"

namespace twc {

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw InvalidArgument(std::string("JSON field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::vector<int> read_ints(const Json& row, std::size_t begin, std::size_t count) {
  std::vector<int> out;
  for (std::size_t k = begin; k < begin + count; ++k) {
    if (!row.at(k).is_number_integer()) throw InvalidArgument("index entries must be integers");
    out.push_back(row.at(k).get<int>());
  }
  return out;
}

Complex read_complex(const Json& row, std::size_t at) {
  if (!row.at(at).is_number() || !row.at(at + 1).is_number()) throw InvalidArgument("coefficient must be numeric");
  return {row.at(at).get<double>(), row.at(at + 1).get<double>()};
}

void push_index(Json& row, const MultiIndex& a) {
  for (int v : a.entries()) row.push_back(v);
}

Json fit_json(const EnvelopeFit& f) {
  return Json{{"ok", f.ok},
              {"exponent", f.exponent},
              {"rate", f.rate},
              {"intercept", f.intercept},
              {"residual", f.residual},
              {"n_points", f.n_points}};
}

}  // namespace

Json to_json(const HermiteCoeffVector& f) {
  Json coeffs = Json::array();
  for (std::size_t k = 0; k < f.index().size(); ++k) {
    const Complex v = f.coeffs()(static_cast<Eigen::Index>(k));
    if (v == Complex{}) continue;
    Json row = Json::array();
    push_index(row, f.index().at(k));
    row.push_back(v.real());
    row.push_back(v.imag());
    coeffs.push_back(std::move(row));
  }
  return Json{{"d", f.dim()}, {"n_max", f.n_max()}, {"coeffs", std::move(coeffs)}};
}

HermiteCoeffVector hermite_vector_from_json(const Json& j) {
  const int d = get_int(j, "d");
  const int n_max = get_int(j, "n_max");
  if (d < 1 || d > 2 || n_max < 0) throw InvalidArgument("Hermite vector needs d in {1,2} and n_max >= 0");
  HermiteCoeffVector f(d, n_max);
  if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw InvalidArgument("missing 'coeffs' array");
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d) + 2)
      throw InvalidArgument("each coefficient row is [index..., re, im]");
    const MultiIndex a(read_ints(row, 0, static_cast<std::size_t>(d)));
    if (!f.index().contains(a)) throw InvalidArgument("coefficient index " + a.to_string() + " exceeds n_max");
    f[a] = read_complex(row, static_cast<std::size_t>(d));
  }
  return f;
}

Json to_json(const WongCoeffMatrix& c) {
  Json entries = Json::array();
  const IndexSet& index = c.index();
  for (std::size_t r = 0; r < index.size(); ++r) {
    for (std::size_t s = 0; s < index.size(); ++s) {
      const Complex v = c.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
      if (v == Complex{}) continue;
      Json row = Json::array();
      push_index(row, index.at(r));
      push_index(row, index.at(s));
      row.push_back(v.real());
      row.push_back(v.imag());
      entries.push_back(std::move(row));
    }
  }
  return Json{{"d", c.dim()}, {"n_max", c.n_max()}, {"entries", std::move(entries)}};
}

WongCoeffMatrix wong_matrix_from_json(const Json& j) {
  const int d = get_int(j, "d");
  const int n_max = get_int(j, "n_max");
  if (d < 1 || d > 2 || n_max < 0) throw InvalidArgument("coefficient matrix needs d in {1,2} and n_max >= 0");
  WongCoeffMatrix c(d, n_max);
  if (!j.contains("entries") || !j.at("entries").is_array()) throw InvalidArgument("missing 'entries' array");
  const auto du = static_cast<std::size_t>(d);
  for (const auto& row : j.at("entries")) {
    if (!row.is_array() || row.size() != 2 * du + 2)
      throw InvalidArgument("each entry row is [alpha1..., alpha2..., re, im]");
    const MultiIndex a(read_ints(row, 0, du));
    const MultiIndex b(read_ints(row, du, du));
    if (!c.index().contains(a) || !c.index().contains(b))
      throw InvalidArgument("entry index exceeds n_max");
    c(PairIndex(a, b)) = read_complex(row, 2 * du);
  }
  return c;
}

Json grid_header_json(const GridFunction& f) {
  return Json{{"dims", f.dims()},
              {"L", f.spec().half_width},
              {"points_per_axis", f.points()},
              {"value_type", "complex, interleaved f64 re/im"},
              {"byte_order", "little"}};
}

Json to_json(const DecayFit& fit) {
  return Json{{"s_hat", fit.s_hat},
              {"r_hat", fit.r_hat},
              {"flavor", to_string(fit.flavor)},
              {"residual", fit.residual},
              {"n_points", fit.n_points},
              {"total_degree", fit_json(fit.total_degree)},
              {"product_weight", fit_json(fit.product_weight)},
              {"s_product", fit.s_product},
              {"preferred_weight", fit.preferred_weight},
              {"note", fit.note}};
}

Json to_json(const GrowthSequence& seq) {
  Json values = Json::array();
  for (double v : seq.values_log) values.push_back(finite_or_null(v));
  return Json{{"norm", to_string(seq.norm)}, {"values_log", std::move(values)},
              {"fitted", seq.fitted},        {"log_h", seq.log_h},
              {"s", seq.s},                  {"intercept", seq.intercept},
              {"residual", seq.residual},    {"fit_from", seq.fit_from},
              {"note", seq.note}};
}

Json to_json(const PositivityResult& p) {
  Json j{{"positive", p.positive},
         {"hermitian_defect", p.hermitian_defect},
         {"min_relative_eigenvalue", p.min_relative_eigenvalue}};
  if (p.witness) {
    Json v = Json::array();
    for (Eigen::Index k = 0; k < p.witness->vector.size(); ++k)
      v.push_back(Json::array({p.witness->vector(k).real(), p.witness->vector(k).imag()}));
    j["witness"] = Json{{"vector", std::move(v)},
                        {"pairing", Json::array({p.witness->pairing.real(), p.witness->pairing.imag()})},
                        {"psi", to_json(p.witness->psi)}};
  }
  return j;
}

Json to_json(const RegularityReport& r) {
  Json j;
  j["planted_s"] = r.planted_s ? Json(*r.planted_s) : Json(nullptr);
  j["fitted_s_growth"] = r.growth.fitted ? Json(r.growth.s) : Json(nullptr);
  j["fitted_s_decay"] = r.decay.flavor != Flavor::Indeterminate ? Json(r.decay.s_hat) : Json(nullptr);
  j["residuals"] = Json{{"growth", r.growth.residual}, {"decay", r.decay.residual}};
  j["pass"] = r.pass;
  j["status"] = to_string(r.status);
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["n_max"] = r.n_max;
  j["N_max"] = r.N_max;
  j["d"] = r.d;
  j["rank"] = r.rank ? Json(*r.rank) : Json(nullptr);
  j["planted_rate"] = r.planted_rate ? Json(*r.planted_rate) : Json(nullptr);
  j["positivity"] = to_json(r.positivity);
  j["growth"] = to_json(r.growth);
  j["decay"] = to_json(r.decay);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const WeylReport& r) {
  return Json{{"pass", r.pass}, {"operator_positivity", to_json(r.operator_positivity)}, {"regularity", to_json(r.regularity)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace twc
