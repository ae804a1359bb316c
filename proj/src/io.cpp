#include "qcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr const char* kQubitOrder = "abcd-msb";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  return fields;
}

double to_double(const std::string& s, int line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
  return v;
}

std::string format_number(double x) {
  if (x == std::floor(x) && std::abs(x) < 9.0e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Calls fn(fields, line_no) for each data row; the first row is skipped as a
// header when its first field equals `header_key`.
template <typename F>
void for_each_row(std::istream& in, const char* header_key, std::size_t width, F&& fn) {
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    auto fields = split_csv(line);
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == header_key) continue;
    }
    if (fields.size() != width) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                  " comma-separated fields");
    }
    fn(fields, line_no);
  }
}

}  // namespace

nlohmann::json density_to_json(const DensityMatrix& rho, const nlohmann::json& metadata) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      re_row.push_back(rho(r, c).real());
      im_row.push_back(rho(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json doc = {{"qubit_order", kQubitOrder}, {"n_qubits", rho.n_qubits()}, {"re", re}, {"im", im}};
  if (!metadata.is_null()) doc["metadata"] = metadata;
  return doc;
}

DensityMatrix density_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("density matrix file: expected a JSON object");
  if (doc.value("qubit_order", std::string{}) != kQubitOrder) {
    throw std::invalid_argument("density matrix file: qubit_order must be \"abcd-msb\"");
  }
  const int n = doc.at("n_qubits").get<int>();
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("density matrix file: n_qubits out of range");
  const std::size_t d = std::size_t{1} << n;
  const auto& re = doc.at("re");
  const auto& im = doc.at("im");
  if (re.size() != d || im.size() != d) throw std::invalid_argument("density matrix file: wrong number of rows");
  ComplexMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (re[r].size() != d || im[r].size() != d) throw std::invalid_argument("density matrix file: wrong row length");
    for (std::size_t c = 0; c < d; ++c) m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
  }
  return DensityMatrix(std::move(m));
}

void write_counts(std::ostream& out, const std::vector<CountRecord>& counts) {
  out << "setting,outcome,count\n";
  for (const auto& rec : counts) {
    out << rec.setting.bases() << ',' << rec.outcome << ',' << format_number(rec.count) << '\n';
  }
}

std::vector<CountRecord> read_counts(std::istream& in) {
  std::vector<CountRecord> out;
  for_each_row(in, "setting", 3, [&](const std::vector<std::string>& f, int line_no) {
    try {
      CountRecord rec{MeasurementSetting(f[0]), f[1], to_double(f[2], line_no)};
      rec.validate();
      out.push_back(std::move(rec));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("counts line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  if (out.empty()) throw std::invalid_argument("counts file has no records");
  return out;
}

void write_correlators(std::ostream& out, const std::vector<CorrelatorRecord>& records) {
  out << "pauli,value,sigma\n";
  for (const auto& rec : records) {
    out << rec.pauli.labels() << ',' << format_number(rec.value) << ',' << format_number(rec.sigma) << '\n';
  }
}

std::vector<CorrelatorRecord> read_correlators(std::istream& in) {
  std::vector<CorrelatorRecord> out;
  for_each_row(in, "pauli", 3, [&](const std::vector<std::string>& f, int line_no) {
    try {
      CorrelatorRecord rec{PauliString(f[0]), to_double(f[1], line_no), to_double(f[2], line_no)};
      rec.validate();
      out.push_back(std::move(rec));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("correlators line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  if (out.empty()) throw std::invalid_argument("correlator file has no records");
  return out;
}

nlohmann::json report_to_json(const KWReport& report) {
  nlohmann::json doc = {
      {"assignment", report.assignment.to_string()},
      {"S", report.S},
      {"J", report.J},
      {"E", report.E},
      {"KW", report.KW},
      {"sigma", nullptr},
      {"method", std::string(to_string(report.method))},
      {"theta_opt", report.optimum.theta},
      {"phi_opt", report.optimum.phi},
  };
  if (report.sigma) doc["sigma"] = *report.sigma;
  return doc;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qcorr
