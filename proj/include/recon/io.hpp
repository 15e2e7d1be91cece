#pragma once

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "recon/types.hpp"

namespace recon {

// Shortest round-trip decimal form of a double, stable across runs so CSV
// outputs are bit-identical for identical inputs.
std::string format_double(double v);

// key = value lines; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> read_config(const std::string& path);

// One row per retained frequency: index, lambda columns, Re, Im.
void write_freq_csv(const std::string& path, const FrequencySet& freqs,
                    const FourierData& data);

// Reads the same schema back (1D or 2D detected from the header); loaded
// values are tagged MEASURED and the nominal bandwidth M is inferred from
// the largest integer index.
std::pair<FrequencySet, FourierData> read_freq_csv(const std::string& path);

// Two-column x,value CSV with a header line.
void write_vector_csv(const std::string& path, const RealVec& x,
                      const RealVec& v, const std::string& x_name,
                      const std::string& v_name);

// rows x cols column-major image as plain comma-separated rows (row r of the
// file is grid row r).
void write_matrix_csv(const std::string& path, const RealVec& flat, int rows,
                      int cols);

// 16-bit binary PGM, values linearly mapped [min,max] -> [0,65535].
void write_pgm16(const std::string& path, const RealVec& flat, int rows,
                 int cols);

// Binary (P4) PBM of an indicator image; nonzero entries become black.
void write_pbm(const std::string& path, const RealVec& flat, int rows, int cols);

void write_manifest(const std::string& path, const nlohmann::json& j);

}  // namespace recon
