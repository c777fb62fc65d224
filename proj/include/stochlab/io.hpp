#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stochlab/bit_prefix.hpp"
#include "stochlab/density.hpp"
#include "stochlab/permutation.hpp"

namespace stochlab {

/// "#len N\n" followed by N characters of 0/1 and a newline.
std::string format_bitset(const BitPrefix& a);
/// ParseError carries the byte offset of the first bad character.
BitPrefix parse_bitset(const std::string& text);
void save_bitset(const std::filesystem::path& path, const BitPrefix& a);
BitPrefix load_bitset(const std::filesystem::path& path);

/// One decimal image per line.
std::string format_permutation(const FinitePermutation& p);
/// Repeated or out-of-range images are reported with their 1-based line.
FinitePermutation parse_permutation(const std::string& text);
void save_permutation(const std::filesystem::path& path, const FinitePermutation& p);
FinitePermutation load_permutation(const std::filesystem::path& path);

/// "n,rho_exact,rho_decimal" then one row per sample.
std::string format_trace(const std::vector<DensitySample>& samples);
void save_trace(const std::filesystem::path& path, const std::vector<DensitySample>& samples);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& body);

}  // namespace stochlab
