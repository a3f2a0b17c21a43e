#include "pilab/algebra.hpp"

#include "pilab/error.hpp"

#include <charconv>
#include <sstream>

namespace pilab::algebra {

namespace {

struct SpecSizes {
  const AlgebraSpec& spec;
  int size_at(std::int32_t level) const { return spec.level_size(level); }
};

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("bad basis atom '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string BasisElement::to_string() const {
  switch (tag) {
    case Tag::One: return "1";
    case Tag::A: return "a";
    case Tag::B: return "b";
    case Tag::Z: return "z_" + std::to_string(level) + "_" + std::to_string(index);
  }
  return "?";
}

BasisElement parse_basis(std::string_view text) {
  if (text == "1") return BasisElement::one();
  if (text == "a") return BasisElement::a();
  if (text == "b") return BasisElement::b();
  if (text.size() > 2 && text.substr(0, 2) == "z_") {
    const auto rest = text.substr(2);
    const auto sep = rest.find('_');
    if (sep != std::string_view::npos) {
      const int level = parse_int(rest.substr(0, sep), text);
      const int index = parse_int(rest.substr(sep + 1), text);
      if (level >= 1 && index >= 1) return BasisElement::z(level, index);
    }
  }
  throw DomainError("bad basis atom '" + std::string(text) + "'");
}

AlgebraElement::AlgebraElement(BasisElement x, mpq_class coefficient) { add_term(x, coefficient); }

void AlgebraElement::add_term(const BasisElement& x, const mpq_class& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(x, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  for (const auto& [x, c] : other.terms_) add_term(x, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const mpq_class& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [x, c] : terms_) c *= scalar;
  return *this;
}

mpq_class AlgebraElement::coefficient(const BasisElement& x) const {
  const auto it = terms_.find(x);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c.get_str() << "*";
    os << x.to_string();
  }
  return os.str();
}

AlgebraSpec::AlgebraSpec(int m_, words::WordSpec word_, bool unital_)
    : m(m_), word(std::move(word_)), unital(unital_) {
  if (m < 2) throw DomainError("m must be at least 2");
}

int AlgebraSpec::level_size(std::int64_t level) const {
  if (level < 1) throw DomainError("Z levels start at 1");
  return m + word.letter(static_cast<std::uint64_t>(level));
}

std::string AlgebraSpec::to_string() const {
  return "A(m=" + std::to_string(m) + ", " + word.to_string() + ")" + (unital ? "#" : "");
}

LevelWindow::LevelWindow(int m, std::span<const std::uint8_t> factor) {
  sizes_.reserve(factor.size());
  for (const auto bit : factor) sizes_.push_back(m + bit);
}

int LevelWindow::size_at(std::int32_t level) const {
  if (level < 1 || level > levels()) throw EngineError("evaluation left the word window");
  return sizes_[static_cast<std::size_t>(level - 1)];
}

void validate(const BasisElement& x, const AlgebraSpec& spec) {
  switch (x.tag) {
    case Tag::One:
      if (!spec.unital) throw DomainError("the unit is only available in the unital extension");
      return;
    case Tag::A:
    case Tag::B:
      return;
    case Tag::Z:
      if (x.level < 1) throw DomainError("Z level must be positive: " + x.to_string());
      if (x.index < 1 || x.index > spec.level_size(x.level)) {
        throw DomainError("Z index out of range for its level: " + x.to_string());
      }
      return;
  }
}

AlgebraElement multiply_basis(const BasisElement& x, const BasisElement& y, const AlgebraSpec& spec) {
  validate(x, spec);
  validate(y, spec);
  const auto p = multiply_atoms(x, y, SpecSizes{spec});
  return p ? AlgebraElement(*p) : AlgebraElement{};
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, const AlgebraSpec& spec) {
  AlgebraElement out;
  for (const auto& [u, cu] : x.terms()) {
    for (const auto& [v, cv] : y.terms()) {
      validate(u, spec);
      validate(v, spec);
      if (const auto p = multiply_atoms(u, v, SpecSizes{spec})) out.add_term(*p, cu * cv);
    }
  }
  return out;
}

std::vector<Letter> letters_from(std::string_view text) {
  std::vector<Letter> out;
  out.reserve(text.size());
  for (const char c : text) {
    if (c == 'a') {
      out.push_back(Letter::A);
    } else if (c == 'b') {
      out.push_back(Letter::B);
    } else {
      throw DomainError("letters must be 'a' or 'b'");
    }
  }
  return out;
}

AlgebraElement left_normed_product(const BasisElement& start, std::span<const Letter> letters,
                                   const AlgebraSpec& spec) {
  validate(start, spec);
  std::optional<BasisElement> acc = start;
  const SpecSizes sizes{spec};
  for (const Letter l : letters) {
    if (!acc) break;
    acc = multiply_atoms(*acc, l == Letter::A ? BasisElement::a() : BasisElement::b(), sizes);
  }
  return acc ? AlgebraElement(*acc) : AlgebraElement{};
}

AlgebraElement evaluate_monomial(const poly::Monomial& mono, std::span<const BasisElement> values,
                                 const AlgebraSpec& spec) {
  if (values.size() != static_cast<std::size_t>(mono.degree())) {
    throw DomainError("substitution length does not match the monomial degree");
  }
  for (const auto& v : values) validate(v, spec);
  const SpecSizes sizes{spec};
  const auto result = poly::evaluate_tree<BasisElement>(
      mono.tree.postfix(), [&](int leaf) { return std::optional<BasisElement>(values[mono.perm[static_cast<std::size_t>(leaf)]]); },
      [&](const BasisElement& x, const BasisElement& y) { return multiply_atoms(x, y, sizes); });
  return result ? AlgebraElement(*result) : AlgebraElement{};
}

StructureAlgebra::StructureAlgebra(std::vector<std::string> names, std::vector<int> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const auto d = names_.size();
  if (d == 0) throw DomainError("structure algebra needs a basis");
  if (table_.size() != d * d) throw DomainError("structure table must be dim x dim");
  for (const int t : table_) {
    if (t != kZero && (t < 0 || static_cast<std::size_t>(t) >= d)) throw DomainError("structure table entry out of range");
  }
  left_zero_.assign(d, 1);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      if (table_[x * d + y] != kZero) left_zero_[x] = 0;
    }
  }
}

std::optional<int> StructureAlgebra::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

nlohmann::json StructureAlgebra::to_json() const {
  nlohmann::json products = nlohmann::json::object();
  const int d = dimension();
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      const int p = multiply(x, y);
      if (p != kZero) products[name(x) + "*" + name(y)] = name(p);
    }
  }
  return nlohmann::json{{"basis", names_}, {"products", products}};
}

StructureAlgebra StructureAlgebra::from_json(const nlohmann::json& j) {
  auto names = j.at("basis").get<std::vector<std::string>>();
  const std::size_t d = names.size();
  std::vector<int> table(d * d, kZero);
  auto index_of = [&](const std::string& s) -> int {
    for (std::size_t i = 0; i < d; ++i) {
      if (names[i] == s) return static_cast<int>(i);
    }
    throw DomainError("unknown atom '" + s + "' in structure table");
  };
  for (const auto& [key, value] : j.at("products").items()) {
    const auto star = key.find('*');
    if (star == std::string::npos) throw DomainError("product key must be 'x*y': " + key);
    const int x = index_of(key.substr(0, star));
    const int y = index_of(key.substr(star + 1));
    table[static_cast<std::size_t>(x) * d + static_cast<std::size_t>(y)] = index_of(value.get<std::string>());
  }
  return StructureAlgebra(std::move(names), std::move(table));
}

StructureAlgebra cyclic_quotient(const AlgebraSpec& spec) {
  if (!spec.word.is_periodic()) throw DomainError("the cyclic quotient needs a periodic word");
  const auto& pattern = spec.word.as_periodic().pattern;
  const int period = static_cast<int>(pattern.size());

  std::vector<BasisElement> atoms;
  if (spec.unital) atoms.push_back(BasisElement::one());
  atoms.push_back(BasisElement::a());
  atoms.push_back(BasisElement::b());
  for (int level = 1; level <= period; ++level) {
    const int k = spec.m + pattern[static_cast<std::size_t>(level - 1)];
    for (int j = 1; j <= k; ++j) atoms.push_back(BasisElement::z(level, j));
  }
  std::map<BasisElement, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    index[atoms[i]] = static_cast<int>(i);
    names.push_back(atoms[i].to_string());
  }

  struct CyclicSizes {
    const AlgebraSpec& spec;
    const words::Bits& pattern;
    int size_at(std::int32_t level) const {
      return spec.m + pattern[static_cast<std::size_t>(level - 1) % pattern.size()];
    }
  } sizes{spec, pattern};

  const std::size_t d = atoms.size();
  std::vector<int> table(d * d, StructureAlgebra::kZero);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      auto p = multiply_atoms(atoms[x], atoms[y], sizes);
      if (!p) continue;
      if (p->is_z() && p->level > period) p->level = 1;
      table[x * d + y] = index.at(*p);
    }
  }
  return StructureAlgebra(std::move(names), std::move(table));
}

}  // namespace pilab::algebra
