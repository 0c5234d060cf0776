#include "mx3/instance.hpp"

#include "mx3/error.hpp"
#include "mx3/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace mx3 {

Assignment Assignment::all_plus(std::span<const std::uint32_t> sizes) {
  std::vector<std::vector<Sign>> v;
  v.reserve(sizes.size());
  for (auto n : sizes) v.emplace_back(n, Sign{1});
  return Assignment(std::move(v));
}

Sign Assignment::at(int block, std::uint32_t index) const {
  return values[static_cast<std::size_t>(block - 1)][index - 1];
}

Sign& Assignment::at(int block, std::uint32_t index) {
  return values[static_cast<std::size_t>(block - 1)][index - 1];
}

Instance::Instance(BlockSizes sizes, std::vector<Constraint> constraints)
    : sizes_(sizes), constraints_(std::move(constraints)) {
  double total = 0.0;
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    const Constraint& con = constraints_[c];
    for (int b = 0; b < 3; ++b) {
      const Literal& lit = con.lits[static_cast<std::size_t>(b)];
      if (lit.block != b + 1) {
        throw ValidationError("constraint " + std::to_string(c) + ": literal " +
                              std::to_string(b + 1) + " must lie in block " +
                              std::to_string(b + 1));
      }
      if (lit.index < 1 || lit.index > sizes_[static_cast<std::size_t>(b)]) {
        throw ValidationError("constraint " + std::to_string(c) + ": index " +
                              std::to_string(lit.index) + " outside block " +
                              std::to_string(b + 1));
      }
      if (lit.sign != 1 && lit.sign != -1) {
        throw ValidationError("constraint " + std::to_string(c) + ": sign must be +-1");
      }
    }
    if (!(con.weight >= 0.0) || !std::isfinite(con.weight)) {
      throw ValidationError("constraint " + std::to_string(c) + ": weight must be finite and >= 0");
    }
    total += con.weight;
  }
  if (!(total > 0.0)) throw ValidationError("W must be positive");
  total_weight_ = total;
}

bool Instance::xor_only() const {
  return std::all_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) {
    return c.pred == kXorPredicate || c.pred == kXorComplement;
  });
}

namespace {

auto canonical_key(const Constraint& c) {
  return std::make_tuple(c.lits[0].index, c.lits[1].index, c.lits[2].index, c.pred.mask,
                         c.lits[0].sign, c.lits[1].sign, c.lits[2].sign, c.weight);
}

}  // namespace

Instance Instance::canonical() const {
  auto sorted = constraints_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Constraint& a, const Constraint& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return Instance(sizes_, std::move(sorted));
}

Instance Instance::scaled(double factor) const {
  auto cons = constraints_;
  for (auto& c : cons) c.weight *= factor;
  return Instance(sizes_, std::move(cons));
}

double satisfied_weight(const Instance& inst, const Assignment& a) {
  double sat = 0.0;
  for (const Constraint& c : inst.constraints()) {
    const int z1 = c.lits[0].sign * a.values[0][c.lits[0].index - 1];
    const int z2 = c.lits[1].sign * a.values[1][c.lits[1].index - 1];
    const int z3 = c.lits[2].sign * a.values[2][c.lits[2].index - 1];
    if (c.pred.accepts(z1, z2, z3)) sat += c.weight;
  }
  return sat;
}

double evaluate(const Instance& inst, const Assignment& a) {
  if (a.num_blocks() != 3) {
    throw ValidationError("assignment has " + std::to_string(a.num_blocks()) +
                          " blocks, instance has 3");
  }
  for (std::size_t b = 0; b < 3; ++b) {
    if (a.values[b].size() != inst.sizes()[b]) {
      throw ValidationError("assignment block " + std::to_string(b + 1) + " has length " +
                            std::to_string(a.values[b].size()) + ", expected " +
                            std::to_string(inst.sizes()[b]));
    }
    for (Sign s : a.values[b]) {
      if (s != 1 && s != -1) throw ValidationError("assignment entries must be +-1");
    }
  }
  return satisfied_weight(inst, a) / inst.total_weight();
}

Assignment random_assignment(const BlockSizes& sizes, std::uint64_t key, std::uint64_t trial) {
  Rng rng(derive_seed(key, {trial}));
  Assignment a = Assignment::all_plus(sizes);
  for (auto& block : a.values) {
    for (auto& v : block) v = static_cast<Sign>(rng.sign());
  }
  return a;
}

double random_baseline(const Instance& inst, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("random_baseline needs trials >= 1");
  double sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    sum += satisfied_weight(inst, random_assignment(inst.sizes(), seed, t));
  }
  return sum / (static_cast<double>(trials) * inst.total_weight());
}

// ---------------------------------------------------------------------------
// Text format

std::string format_weight(double w) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

bool parse_double(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  bool have_header = false;
  BlockSizes sizes{0, 0, 0};
  long long declared = 0;
  std::map<long long, Predicate3> preds{{0, kXorPredicate}};
  std::vector<Constraint> cons;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    last_line = line_no;
    if (tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "duplicate header");
      long long m = 0, n2 = 0, n3 = 0;
      if (tok.size() != 6 || tok[1] != "mx3" || !parse_int(tok[2], m) || !parse_int(tok[3], n2) ||
          !parse_int(tok[4], n3) || !parse_int(tok[5], declared) || m < 1 || n2 < 1 || n3 < 1 ||
          declared < 0 || m > UINT32_MAX || n2 > UINT32_MAX || n3 > UINT32_MAX) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                         "expected 'p mx3 <M> <N2> <N3> <num_constraints>'");
      }
      sizes = {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n2),
               static_cast<std::uint32_t>(n3)};
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "content before 'p mx3' header");
    }
    if (tok[0] == "d") {
      long long id = 0, mask = 0;
      if (tok.size() != 4 || tok[1] != "pred" || !parse_int(tok[2], id) || !parse_int(tok[3], mask) ||
          id < 0) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'd pred <id> <mask>'");
      }
      if (mask < 0 || mask > 255) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "mask must lie in 0..255");
      }
      const Predicate3 p{static_cast<std::uint8_t>(mask)};
      if (auto it = preds.find(id); it != preds.end() && it->second != p) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                         "predicate id " + std::to_string(id) + " already defined");
      }
      preds[id] = p;
      continue;
    }
    if (tok.size() != 5) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                       "expected '<weight> <lit1> <lit2> <lit3> <pred-id>'");
    }
    Constraint c;
    if (!parse_double(tok[0], c.weight) || !std::isfinite(c.weight)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad weight '" + std::string(tok[0]) + "'");
    }
    if (c.weight < 0.0) {
      throw ParseError(ParseErrorKind::kNegativeWeight, line_no, std::string(tok[0]));
    }
    for (int b = 0; b < 3; ++b) {
      long long lit = 0;
      if (!parse_int(tok[static_cast<std::size_t>(b + 1)], lit)) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                         "bad literal '" + std::string(tok[static_cast<std::size_t>(b + 1)]) + "'");
      }
      const long long idx = lit < 0 ? -lit : lit;
      if (idx < 1 || idx > sizes[static_cast<std::size_t>(b)]) {
        throw ParseError(ParseErrorKind::kLiteralOutOfRange, line_no,
                         "block " + std::to_string(b + 1) + " literal " + std::to_string(lit));
      }
      c.lits[static_cast<std::size_t>(b)] =
          Literal{b + 1, static_cast<std::uint32_t>(idx), static_cast<Sign>(lit < 0 ? -1 : 1)};
    }
    long long id = 0;
    if (!parse_int(tok[4], id)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad predicate id");
    }
    const auto it = preds.find(id);
    if (it == preds.end()) {
      throw ParseError(ParseErrorKind::kUnknownPredicate, line_no, std::to_string(id));
    }
    c.pred = it->second;
    cons.push_back(c);
  }
  if (!have_header) throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "missing 'p mx3' header");
  if (static_cast<long long>(cons.size()) != declared) {
    throw ParseError(ParseErrorKind::kCountMismatch, last_line,
                     "header declares " + std::to_string(declared) + ", found " +
                         std::to_string(cons.size()));
  }
  double total = 0.0;
  for (const auto& c : cons) total += c.weight;
  if (!(total > 0.0)) throw ParseError(ParseErrorKind::kZeroTotalWeight, last_line, "no positive weight");
  return Instance(sizes, std::move(cons));
}

std::string serialize(const Instance& inst, std::span<const std::string> comments) {
  const Instance canon = inst.canonical();
  std::map<std::uint8_t, int> ids;
  for (const auto& c : canon.constraints()) {
    if (c.pred != kXorPredicate) ids.emplace(c.pred.mask, 0);
  }
  int next = 1;
  for (auto& [mask, id] : ids) id = next++;

  std::ostringstream out;
  for (const auto& line : comments) out << "c " << line << '\n';
  const auto& s = canon.sizes();
  out << "p mx3 " << s[0] << ' ' << s[1] << ' ' << s[2] << ' ' << canon.constraints().size() << '\n';
  for (const auto& [mask, id] : ids) out << "d pred " << id << ' ' << static_cast<int>(mask) << '\n';
  for (const auto& c : canon.constraints()) {
    out << format_weight(c.weight);
    for (const auto& lit : c.lits) out << ' ' << (lit.sign < 0 ? "-" : "") << lit.index;
    out << ' ' << (c.pred == kXorPredicate ? 0 : ids.at(c.pred.mask)) << '\n';
  }
  return out.str();
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const std::string& path, const Instance& inst,
                         std::span<const std::string> comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << serialize(inst, comments);
}

}  // namespace mx3
