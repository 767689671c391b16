#include "diagonalis/json_io.hpp"

#include <cmath>

#include "diagonalis/errors.hpp"

namespace diagonalis::io {

using seq::SequenceSpec;
using seq::Stream;
using seq::StreamKind;

json to_json(const Real& x) {
  if (x.exact()) return x.str();
  return x.to_double();
}

json to_json(const Complex& z) {
  if (z.is_real()) return to_json(z.re);
  return json{{"re", to_json(z.re)}, {"im", to_json(z.im)}};
}

json to_json(const seq::ExtendedSum& s) {
  switch (s.kind) {
    case seq::ExtendedSum::Kind::Finite: return to_json(s.value);
    case seq::ExtendedSum::Kind::PosInf: return "inf";
    case seq::ExtendedSum::Kind::NegInf: return "-inf";
    case seq::ExtendedSum::Kind::Divergent: return "divergent";
  }
  return nullptr;
}

json to_json(const seq::Count& c) {
  if (!c) return "inf";
  return *c;
}

json to_json(const std::vector<Real>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const Matrix& m) {
  json e = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"n", m.n()}, {"real", m.is_real()}, {"entries", e}};
}

json to_json(const Stream& s) {
  switch (s.kind) {
    case StreamKind::Finite: return json{{"kind", "finite"}, {"values", to_json(s.values)}};
    case StreamKind::Constant: return json{{"kind", "constant"}, {"value", to_json(s.value)}, {"count", to_json(s.count)}};
    case StreamKind::Geometric:
      return json{{"kind", "geometric"}, {"first", to_json(s.first)}, {"ratio", to_json(s.ratio)}, {"shift", to_json(s.shift)}};
    case StreamKind::Telescoping:
      return json{{"kind", "telescoping"}, {"scale", to_json(s.scale)}, {"start", s.start}, {"shift", to_json(s.shift)}};
  }
  return nullptr;
}

json to_json(const SequenceSpec& s) {
  json st = json::array();
  for (const auto& x : s.streams()) st.push_back(to_json(x));
  return json{{"field", s.is_real() ? "real" : "complex"}, {"exact", s.exact()}, {"streams", st}};
}

json to_json(const spectra::OperatorSpec& s) {
  using K = spectra::OperatorSpec::Kind;
  switch (s.kind) {
    case K::Matrix: return json{{"kind", "matrix"}, {"matrix", to_json(s.matrix)}};
    case K::FiniteSpectrum: {
      json pts = json::array();
      for (const auto& p : s.points) pts.push_back({{"value", to_json(p.value)}, {"multiplicity", to_json(p.multiplicity)}});
      return json{{"kind", "finite_spectrum"}, {"points", pts}};
    }
    case K::Diagonalizable:
      return json{{"kind", "diagonalizable"}, {"eigs", to_json(s.eigs)}, {"kernel_dim", to_json(s.kernel_dim)}};
  }
  return nullptr;
}

json to_json(const spectra::SpectralSummary& s) {
  json j{{"real", s.real}, {"ess_spectrum", to_json(s.ess_spectrum)}};
  if (s.real) {
    j["spectrum_min"] = to_json(s.spectrum_min);
    j["spectrum_max"] = to_json(s.spectrum_max);
    if (s.ess_interval) j["ess_numerical_range"] = {to_json(s.ess_interval->first), to_json(s.ess_interval->second)};
  } else {
    j["ess_numerical_range"] = to_json(s.ess_hull);
  }
  json m = json::array();
  for (const auto& [v, c] : s.endpoint_multiplicities) m.push_back({{"value", to_json(v)}, {"multiplicity", to_json(c)}});
  j["endpoint_multiplicities"] = m;
  return j;
}

Real real_from_json(const json& j, bool exact) {
  Real r;
  if (j.is_number_integer()) {
    r = Real(j.get<long long>());
  } else if (j.is_number_unsigned()) {
    r = Real(j.get<unsigned long long>());
  } else if (j.is_number_float()) {
    double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError("non-finite number");
    r = exact ? Real::from_decimal(x) : Real(x);
  } else if (j.is_string()) {
    r = Real::parse(j.get<std::string>());
  } else {
    throw InputError("expected a real number, got " + j.dump());
  }
  return exact ? r : r.to_float();
}

Complex complex_from_json(const json& j, bool exact) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError("complex scalar must be [re, im]");
    return {real_from_json(j[0], exact), real_from_json(j[1], exact)};
  }
  if (j.is_object()) {
    Real re = j.contains("re") ? real_from_json(j.at("re"), exact) : Real(exact ? Real(0) : Real(0.0));
    Real im = j.contains("im") ? real_from_json(j.at("im"), exact) : Real(exact ? Real(0) : Real(0.0));
    return {re, im};
  }
  return Complex(real_from_json(j, exact));
}

seq::Count count_from_json(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::nullopt;
    throw InputError("bad count: " + s);
  }
  if (j.is_number_integer() || j.is_number_unsigned()) {
    long long v = j.get<long long>();
    if (v < 0) throw InputError("negative count");
    return static_cast<std::uint64_t>(v);
  }
  throw InputError("bad count: " + j.dump());
}

std::vector<Real> reals_from_json(const json& j, bool exact) {
  if (!j.is_array()) throw InputError("expected a list of reals");
  std::vector<Real> v;
  for (const auto& x : j) v.push_back(real_from_json(x, exact));
  return v;
}

std::vector<Complex> complexes_from_json(const json& j, bool exact) {
  if (!j.is_array()) throw InputError("expected a list of scalars");
  std::vector<Complex> v;
  for (const auto& x : j) v.push_back(complex_from_json(x, exact));
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (j.is_array()) {
    // Nested rows of scalars.
    std::vector<std::vector<cplx>> rows;
    for (const auto& r : j) {
      std::vector<cplx> row;
      for (const auto& x : r) row.push_back(complex_from_json(x, false).to_std());
      rows.push_back(row);
    }
    return Matrix::from_rows(rows);
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) throw InputError("matrix JSON needs n and entries");
  std::size_t n = j.at("n").get<std::size_t>();
  const json& e = j.at("entries");
  if (!e.is_array() || e.size() != n * n) throw InputError("matrix entries must have n*n items");
  Matrix m(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const json& x = e[k];
    cplx v;
    if (x.is_array()) {
      if (x.size() != 2) throw InputError("matrix entry must be [re, im]");
      v = {real_from_json(x[0], false).to_double(), real_from_json(x[1], false).to_double()};
    } else {
      v = complex_from_json(x, false).to_std();
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InputError("non-finite matrix entry");
    m(k / n, k % n) = v;
  }
  return m;
}

Stream stream_from_json(const json& j, bool exact) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("stream JSON needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  auto opt_complex = [&](const char* key) {
    return j.contains(key) ? complex_from_json(j.at(key), exact) : Complex(Real(0));
  };
  if (kind == "finite") return Stream::finite(complexes_from_json(j.at("values"), exact));
  if (kind == "constant" || kind == "const") {
    seq::Count c = j.contains("count") ? count_from_json(j.at("count")) : std::nullopt;
    return Stream::constant(complex_from_json(j.at("value"), exact), c);
  }
  if (kind == "geometric")
    return Stream::geometric(complex_from_json(j.at("first"), exact), real_from_json(j.at("ratio"), exact),
                             opt_complex("shift"));
  if (kind == "telescoping") {
    std::uint64_t start = j.contains("start") ? j.at("start").get<std::uint64_t>() : 1;
    return Stream::telescoping(complex_from_json(j.at("scale"), exact), start, opt_complex("shift"));
  }
  throw InputError("unknown stream kind: " + kind);
}

SequenceSpec spec_from_json(const json& j, bool exact) {
  std::vector<Stream> streams;
  std::optional<seq::Field> field;
  if (j.is_array()) {
    streams.push_back(Stream::finite(complexes_from_json(j, exact)));
  } else if (j.is_object() && j.contains("streams")) {
    if (j.contains("exact")) exact = exact && j.at("exact").get<bool>();
    for (const auto& s : j.at("streams")) streams.push_back(stream_from_json(s, exact));
    if (j.contains("field")) {
      std::string f = j.at("field").get<std::string>();
      if (f == "real") field = seq::Field::Real;
      else if (f == "complex") field = seq::Field::Complex;
      else throw InputError("field must be real or complex");
    }
  } else if (j.is_object() && j.contains("kind")) {
    streams.push_back(stream_from_json(j, exact));
  } else {
    throw InputError("sequence JSON must be a list or an object with streams");
  }
  if (!field) {
    field = seq::Field::Real;
    for (const auto& s : streams)
      if (!s.is_real()) field = seq::Field::Complex;
  }
  return SequenceSpec(std::move(streams), *field, exact);
}

seq::OrderedSequenceSpec ordered_from_json(const json& j, bool exact) {
  seq::OrderedSequenceSpec o;
  if (j.is_array()) {
    o.prefix = complexes_from_json(j, exact);
    return o;
  }
  if (!j.is_object()) throw InputError("ordered sequence JSON must be a list or an object");
  if (j.contains("prefix")) o.prefix = complexes_from_json(j.at("prefix"), exact);
  if (j.contains("tail"))
    for (const auto& t : j.at("tail")) {
      std::uint64_t w = t.contains("weight") ? t.at("weight").get<std::uint64_t>() : 1;
      if (w == 0) throw InputError("tail weight must be positive");
      Stream s = stream_from_json(t.contains("stream") ? t.at("stream") : t, exact);
      // Round-trip through a spec to validate parameters and apply the float demotion.
      SequenceSpec check({s}, s.is_real() ? seq::Field::Real : seq::Field::Complex, exact);
      o.tail.emplace_back(check.streams().front(), w);
    }
  if (!exact)
    for (auto& x : o.prefix) x = x.to_float();
  return o;
}

spectra::OperatorSpec operator_from_json(const json& j, bool exact) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("operator JSON needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "matrix") return spectra::OperatorSpec::from_matrix(matrix_from_json(j.at("matrix")));
  if (kind == "finite_spectrum") {
    std::vector<spectra::SpectrumPoint> pts;
    for (const auto& p : j.at("points"))
      pts.push_back({complex_from_json(p.at("value"), exact),
                     p.contains("multiplicity") ? count_from_json(p.at("multiplicity")) : seq::Count(std::nullopt)});
    return spectra::OperatorSpec::finite_spectrum(std::move(pts));
  }
  if (kind == "diagonalizable") {
    seq::Count k = j.contains("kernel_dim") ? count_from_json(j.at("kernel_dim")) : seq::Count(0);
    return spectra::OperatorSpec::diagonalizable(spec_from_json(j.at("eigs"), exact), k);
  }
  throw InputError("unknown operator kind: " + kind);
}

}  // namespace diagonalis::io
