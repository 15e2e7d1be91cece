#include "recon/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace recon {
namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec <= 16; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(probe, "%lf", &back);
    if (back == v) return probe;
  }
  return buf;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty key");
    kv[key] = val;
  }
  return kv;
}

void write_freq_csv(const std::string& path, const FrequencySet& freqs,
                    const FourierData& data) {
  if (data.values.size() != freqs.size())
    throw std::invalid_argument("write_freq_csv: size mismatch");
  auto out = open_out(path);
  if (freqs.dims == 1) {
    out << "k,lambda,re,im\n";
    for (long i = 0; i < freqs.size(); ++i)
      out << freqs.k1[i] << ',' << format_double(freqs.lambda1[i]) << ','
          << format_double(data.values[i].real()) << ','
          << format_double(data.values[i].imag()) << '\n';
  } else {
    out << "k1,k2,lambda1,lambda2,re,im\n";
    for (long i = 0; i < freqs.size(); ++i)
      out << freqs.k1[i] << ',' << freqs.k2[i] << ','
          << format_double(freqs.lambda1[i]) << ','
          << format_double(freqs.lambda2[i]) << ','
          << format_double(data.values[i].real()) << ','
          << format_double(data.values[i].imag()) << '\n';
  }
}

std::pair<FrequencySet, FourierData> read_freq_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data csv: " + path);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("empty data csv: " + path);
  int dims;
  if (header == "k,lambda,re,im")
    dims = 1;
  else if (header == "k1,k2,lambda1,lambda2,re,im")
    dims = 2;
  else
    throw std::runtime_error("unrecognized data csv header: " + header);

  std::vector<long> k1, k2;
  std::vector<double> l1, l2, re, im;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<double> cols;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto comma = line.find(',', pos);
      std::string cell = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        cols.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad number '" + cell + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(cols.size()) != (dims == 1 ? 4 : 6))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": wrong column count");
    if (dims == 1) {
      k1.push_back(std::lround(cols[0]));
      l1.push_back(cols[1]);
      re.push_back(cols[2]);
      im.push_back(cols[3]);
    } else {
      k1.push_back(std::lround(cols[0]));
      k2.push_back(std::lround(cols[1]));
      l1.push_back(cols[2]);
      l2.push_back(cols[3]);
      re.push_back(cols[4]);
      im.push_back(cols[5]);
    }
  }
  if (re.empty()) throw std::runtime_error("no data rows in " + path);

  FrequencySet freqs;
  freqs.dims = dims;
  const long count = static_cast<long>(re.size());
  freqs.k1.resize(count);
  freqs.lambda1.resize(count);
  long mx = 0;
  for (long i = 0; i < count; ++i) {
    freqs.k1[i] = static_cast<int>(k1[i]);
    freqs.lambda1[i] = l1[i];
    mx = std::max(mx, std::labs(k1[i]));
  }
  if (dims == 2) {
    freqs.k2.resize(count);
    freqs.lambda2.resize(count);
    for (long i = 0; i < count; ++i) {
      freqs.k2[i] = static_cast<int>(k2[i]);
      freqs.lambda2[i] = l2[i];
      mx = std::max(mx, std::labs(k2[i]));
    }
  }
  freqs.M = static_cast<int>(mx);

  FourierData data;
  data.provenance = Provenance::MEASURED;
  data.values.resize(count);
  for (long i = 0; i < count; ++i) data.values[i] = Cplx(re[i], im[i]);
  return {std::move(freqs), std::move(data)};
}

void write_vector_csv(const std::string& path, const RealVec& x,
                      const RealVec& v, const std::string& x_name,
                      const std::string& v_name) {
  if (x.size() != v.size())
    throw std::invalid_argument("write_vector_csv: size mismatch");
  auto out = open_out(path);
  out << x_name << ',' << v_name << '\n';
  for (long i = 0; i < x.size(); ++i)
    out << format_double(x[i]) << ',' << format_double(v[i]) << '\n';
}

void write_matrix_csv(const std::string& path, const RealVec& flat, int rows,
                      int cols) {
  if (flat.size() != static_cast<long>(rows) * cols)
    throw std::invalid_argument("write_matrix_csv: size mismatch");
  auto out = open_out(path);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c) out << ',';
      out << format_double(flat[r + static_cast<long>(c) * rows]);
    }
    out << '\n';
  }
}

void write_pgm16(const std::string& path, const RealVec& flat, int rows,
                 int cols) {
  if (flat.size() != static_cast<long>(rows) * cols)
    throw std::invalid_argument("write_pgm16: size mismatch");
  double lo = flat.minCoeff(), hi = flat.maxCoeff();
  double span = hi > lo ? hi - lo : 1.0;
  auto out = open_out(path, true);
  out << "P5\n" << cols << ' ' << rows << "\n65535\n";
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double t = (flat[r + static_cast<long>(c) * rows] - lo) / span;
      auto v = static_cast<std::uint16_t>(std::lround(t * 65535.0));
      char bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
      out.write(bytes, 2);
    }
}

void write_pbm(const std::string& path, const RealVec& flat, int rows,
               int cols) {
  if (flat.size() != static_cast<long>(rows) * cols)
    throw std::invalid_argument("write_pbm: size mismatch");
  auto out = open_out(path, true);
  out << "P4\n" << cols << ' ' << rows << '\n';
  const int row_bytes = (cols + 7) / 8;
  for (int r = 0; r < rows; ++r) {
    std::string row(row_bytes, '\0');
    for (int c = 0; c < cols; ++c)
      if (flat[r + static_cast<long>(c) * rows] != 0.0)
        row[c / 8] |= static_cast<char>(0x80 >> (c % 8));
    out.write(row.data(), row_bytes);
  }
}

void write_manifest(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace recon
