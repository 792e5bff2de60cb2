#pragma once

#include <string>
#include <vector>

#include "parsol/structmat.hpp"

namespace parsol {

/// STRUCTMAT text format, version 1.
///   line 1:  STRUCTMAT 1 <kind> <n> <m> <s> <r> [corner_rows corner_cols]
///   then one real per line as a C hexadecimal float literal, body entries
///   in storage order, corner block last (row-major).
/// Lines starting with '#' are comments (generated files record the RNG
/// name and seed there) and are ignored by the parser.
std::string write_matrix(const StructuredMatrix& A,
                         const std::vector<std::string>& comments = {});
StructuredMatrix parse_matrix(const std::string& text);

/// VEC 1 <length>, then one real per line (hex floats).
std::string write_vector(const Vector& v, const std::vector<std::string>& comments = {});
Vector parse_vector(const std::string& text);

/// TRAJ 1 <m> <p> <N>, then (p*N+1)*m reals, time-major.
std::string write_trajectory(const Vector& flat, int m, int p, int N);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Bit-exact decimal-independent real formatting (printf %a).
std::string format_hex(double v);

}  // namespace parsol
