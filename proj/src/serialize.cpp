#include "ptreal/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ptreal {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename F>
ordered_json rows_to_json(std::size_t rows, std::size_t cols, F&& value) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(value(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json parse_object(const std::string& text, const char* what) {
  try {
    auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw Error(ErrorKind::invalid_input, std::string(what) + ": expected a JSON object");
    return doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, std::string(what) + ": " + e.what());
  }
}

std::size_t read_size(const nlohmann::json& doc, const char* what) {
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long>() < 1 ||
      doc["n"].get<long>() > kMaxDimension) {
    throw Error(ErrorKind::invalid_input, std::string(what) + ": missing or invalid \"n\"");
  }
  return static_cast<std::size_t>(doc["n"].get<long>());
}

RMatrix read_rows(const nlohmann::json& doc, const char* key, std::size_t n, const char* what) {
  const auto fail = [&] {
    return Error(ErrorKind::invalid_input,
                 std::string(what) + ": \"" + key + "\" must be an " + std::to_string(n) + "x" +
                     std::to_string(n) + " array of numbers");
  };
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != n) throw fail();
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = doc[key][i];
    if (!row.is_array() || row.size() != n) throw fail();
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number()) throw fail();
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

CMatrix combine(const RMatrix& re, const RMatrix& im) {
  CMatrix c(re.rows(), re.cols());
  for (std::size_t i = 0; i < re.rows(); ++i)
    for (std::size_t j = 0; j < re.cols(); ++j) c(i, j) = cplx(re(i, j), im(i, j));
  return c;
}

ordered_json complex_json(cplx z) {
  ordered_json o;
  o["re"] = z.real();
  o["im"] = z.imag();
  return o;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string operator_matrix_to_json(const OperatorMatrix& m) {
  const auto& e = m.entries;
  ordered_json doc;
  doc["n"] = m.n_basis;
  doc["basis"] = to_string(m.basis);
  doc["entries_re"] = rows_to_json(e.rows(), e.cols(), [&](auto i, auto j) { return e(i, j).real(); });
  doc["entries_im"] = rows_to_json(e.rows(), e.cols(), [&](auto i, auto j) { return e(i, j).imag(); });
  return doc.dump();
}

OperatorMatrix operator_matrix_from_json(const std::string& text) {
  const char* what = "operator matrix";
  const auto doc = parse_object(text, what);
  const std::size_t n = read_size(doc, what);
  BasisTag basis = BasisTag::raw;
  if (doc.contains("basis")) {
    if (!doc["basis"].is_string()) throw Error(ErrorKind::invalid_input, "operator matrix: \"basis\" must be a string");
    basis = basis_tag_from_string(doc["basis"].get<std::string>());
  }
  auto entries = combine(read_rows(doc, "entries_re", n, what), read_rows(doc, "entries_im", n, what));
  return OperatorMatrix::make(std::move(entries), basis, "loaded");
}

std::string antiunitary_to_json(const AntiunitaryRep& a) {
  const auto& w = a.unitary_part();
  ordered_json doc;
  doc["n"] = a.n_basis();
  doc["w_re"] = rows_to_json(w.rows(), w.cols(), [&](auto i, auto j) { return w(i, j).real(); });
  doc["w_im"] = rows_to_json(w.rows(), w.cols(), [&](auto i, auto j) { return w(i, j).imag(); });
  return doc.dump();
}

AntiunitaryRep antiunitary_from_json(const std::string& text) {
  const char* what = "antiunitary";
  const auto doc = parse_object(text, what);
  const std::size_t n = read_size(doc, what);
  return AntiunitaryRep::custom(combine(read_rows(doc, "w_re", n, what), read_rows(doc, "w_im", n, what)));
}

std::string real_matrix_to_json(const RealMatrix& m) {
  const auto& e = m.entries;
  ordered_json doc;
  doc["n"] = m.n();
  doc["entries"] = rows_to_json(e.rows(), e.cols(), [&](auto i, auto j) { return e(i, j); });
  doc["imag_residual"] = m.imag_residual;
  doc["source_label"] = m.source_label;
  return doc.dump();
}

RealMatrix real_matrix_from_json(const std::string& text) {
  const char* what = "real matrix";
  const auto doc = parse_object(text, what);
  const std::size_t n = read_size(doc, what);
  RealMatrix m;
  m.entries = read_rows(doc, "entries", n, what);
  if (doc.contains("imag_residual") && doc["imag_residual"].is_number())
    m.imag_residual = doc["imag_residual"].get<double>();
  if (doc.contains("source_label") && doc["source_label"].is_string())
    m.source_label = doc["source_label"].get<std::string>();
  return m;
}

std::string spectrum_report_to_json(const SpectrumReport& r) {
  ordered_json doc;
  doc["n"] = r.n_basis;
  ordered_json eigs = ordered_json::array();
  for (const auto& e : r.eigenvalues) eigs.push_back(complex_json(e));
  doc["eigenvalues"] = std::move(eigs);
  doc["real_set"] = r.real_set;
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back(ordered_json::array({complex_json(a), complex_json(b)}));
  doc["pairs"] = std::move(pairs);
  doc["tol_classify"] = r.tol_classify;
  doc["backward_error"] = r.backward_error;
  return doc.dump();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "N,level,re,im,cauchy_diff\n";
  for (const auto& r : rows) {
    os << r.n_basis << ',' << r.level << ',' << format_double(r.value.real()) << ','
       << format_double(r.value.imag()) << ',' << format_double(r.cauchy_diff) << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::io, "error reading '" + path.string() + "'");
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::io, "error writing '" + path.string() + "'");
}

}  // namespace ptreal
