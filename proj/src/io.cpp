#include "stochlab/io.hpp"

#include <fstream>
#include <sstream>

#include "stochlab/errors.hpp"

namespace stochlab {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << body;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string format_bitset(const BitPrefix& a) {
  return "#len " + std::to_string(a.size()) + "\n" + a.str() + "\n";
}

BitPrefix parse_bitset(const std::string& text) {
  static const std::string kHeader = "#len ";
  if (text.compare(0, kHeader.size(), kHeader) != 0) {
    std::size_t pos = 0;
    while (pos < kHeader.size() && pos < text.size() && text[pos] == kHeader[pos]) ++pos;
    throw ParseError("bitset must start with '#len N'", pos);
  }
  std::size_t pos = kHeader.size();
  const std::size_t digits_begin = pos;
  std::uint64_t len = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    if (len > (UINT64_MAX - 9) / 10) throw ParseError("bitset length is out of range", pos);
    len = len * 10 + static_cast<std::uint64_t>(text[pos] - '0');
    ++pos;
  }
  if (pos == digits_begin) throw ParseError("bitset header has no length", pos);
  if (pos >= text.size() || text[pos] != '\n') {
    throw ParseError("bitset header must end in a newline", pos);
  }
  ++pos;
  std::vector<std::uint8_t> bits;
  while (pos < text.size() && text[pos] != '\n') {
    const char c = text[pos];
    if (c != '0' && c != '1') {
      throw ParseError("invalid bit character at byte " + std::to_string(pos), pos);
    }
    if (bits.size() == len) {
      throw ParseError("bitset body is longer than #len " + std::to_string(len), pos);
    }
    bits.push_back(c == '1' ? 1 : 0);
    ++pos;
  }
  if (bits.size() != len) {
    throw ParseError("bitset body has " + std::to_string(bits.size()) + " bits, header says " +
                         std::to_string(len),
                     pos);
  }
  if (pos >= text.size()) throw ParseError("bitset body must end in a newline", pos);
  ++pos;
  if (pos != text.size()) throw ParseError("unexpected data after the bitset body", pos);
  return BitPrefix(std::move(bits));
}

void save_bitset(const std::filesystem::path& path, const BitPrefix& a) {
  write_file(path, format_bitset(a));
}

BitPrefix load_bitset(const std::filesystem::path& path) { return parse_bitset(read_file(path)); }

std::string format_permutation(const FinitePermutation& p) {
  std::string out;
  for (auto v : p.forward()) out += std::to_string(v) + "\n";
  return out;
}

FinitePermutation parse_permutation(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  const std::uint64_t n = lines.size();
  std::vector<std::uint64_t> image(n);
  std::vector<std::uint64_t> seen_at(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::uint64_t lineno = i + 1;
    if (line.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty", lineno);
    std::uint64_t v = 0;
    for (char c : line) {
      if (c < '0' || c > '9') {
        throw ParseError("line " + std::to_string(lineno) + ": '" + line + "' is not a natural number",
                         lineno);
      }
      if (v > (UINT64_MAX - 9) / 10) {
        throw ParseError("line " + std::to_string(lineno) + ": value out of range", lineno);
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (v >= n) {
      throw ParseError("line " + std::to_string(lineno) + ": image " + std::to_string(v) +
                           " is out of range for size " + std::to_string(n),
                       lineno);
    }
    if (seen_at[v] != 0) {
      throw ParseError("line " + std::to_string(lineno) + ": image " + std::to_string(v) +
                           " repeats line " + std::to_string(seen_at[v]),
                       lineno);
    }
    seen_at[v] = lineno;
    image[i] = v;
  }
  return FinitePermutation(std::move(image));
}

void save_permutation(const std::filesystem::path& path, const FinitePermutation& p) {
  write_file(path, format_permutation(p));
}

FinitePermutation load_permutation(const std::filesystem::path& path) {
  return parse_permutation(read_file(path));
}

std::string format_trace(const std::vector<DensitySample>& samples) {
  std::string out = "n,rho_exact,rho_decimal\n";
  std::uint64_t last = 0;
  for (const auto& s : samples) {
    if (s.n <= last) throw InvariantViolation("trace rows must increase in n");
    last = s.n;
    out += std::to_string(s.n) + "," + s.rho.str() + "," + s.rho.decimal(6) + "\n";
  }
  return out;
}

void save_trace(const std::filesystem::path& path, const std::vector<DensitySample>& samples) {
  write_file(path, format_trace(samples));
}

}  // namespace stochlab
