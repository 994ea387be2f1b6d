#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cbpenta/system.hpp"

namespace cbpenta {

/// Parsed contents of a system file.
struct SystemData {
    BlockPentaCyclic mat;
    BlockVector f;
};

/// System file format (plain text, UTF-8, whitespace-separated):
///   line 1: `cbpenta 1`
///   line 2: `m n`
///   for k = 1..n: blocks A_k B_k C_k D_k E_k, each written as m lines
///   of m reals (row-major), blocks separated by blank lines
///   then n lines of m reals for f_1..f_n.
/// Reals are written with 17 significant digits, so a round trip is
/// value-exact; readers accept any standard decimal/scientific literal.
SystemData read_system(std::istream& in);
void write_system(std::ostream& out, const BlockPentaCyclic& mat, const BlockVector& f);

/// Solution file: `cbpenta-solution 1`, `m n`, then n lines of m reals.
BlockVector read_solution(std::istream& in);
void write_solution(std::ostream& out, const BlockVector& x);

/// File wrappers. Throw IoError when the file cannot be opened or written.
SystemData read_system_file(const std::filesystem::path& path);
void write_system_file(const std::filesystem::path& path, const BlockPentaCyclic& mat,
                       const BlockVector& f);
BlockVector read_solution_file(const std::filesystem::path& path);
void write_solution_file(const std::filesystem::path& path, const BlockVector& x);

/// Shortest-exact decimal for a double is at most 17 significant digits.
std::string format_real17(double v);

}  // namespace cbpenta
