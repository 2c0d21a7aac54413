#include "arcflux/problem_file.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

namespace arcflux::io {

namespace {

using Value = std::variant<double, bool, std::string, std::vector<double>>;

struct Entry {
  Value value;
  int line = 0;
  int column = 0;
  bool used = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, int line, int column) {
  const std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty())
    throw ParseError("expected a number, got '" + buf + "'", line, column);
  return v;
}

Value parse_value(std::string_view text, int line, int column) {
  if (text.empty()) throw ParseError("missing value", line, column);
  if (text.front() == '[') {
    if (text.back() != ']')
      throw ParseError("unterminated array", line, column);
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<double> items;
    if (!trim(body).empty()) {
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = body.find(',', start);
        std::string_view item = body.substr(
            start, comma == std::string_view::npos ? body.size() - start
                                                   : comma - start);
        const int item_col = column + 1 + static_cast<int>(start);
        const std::string_view trimmed = trim(item);
        if (trimmed.empty())
          throw ParseError("empty array element", line, item_col);
        items.push_back(parse_number(trimmed, line, item_col));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    return items;
  }
  if (text == "true") return true;
  if (text == "false") return false;
  const char c = text.front();
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
    return std::string(text);
  return parse_number(text, line, column);
}

class KeyBag {
public:
  explicit KeyBag(std::istream& is) {
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
      ++line_no;
      std::string_view line = raw;
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError("expected 'key = value'", line_no);
      const std::string key{trim(line.substr(0, eq))};
      if (key.empty()) throw ParseError("missing key", line_no);
      const std::string_view value_text = trim(line.substr(eq + 1));
      const int value_col =
          static_cast<int>(raw.find(value_text.empty() ? "=" : value_text)) + 1;
      if (entries_.count(key))
        throw ParseError("duplicate key '" + key + "'", line_no);
      entries_[key] =
          Entry{parse_value(value_text, line_no, value_col), line_no, value_col};
    }
  }

  template <typename T>
  std::optional<T> take(const std::string& key, const char* type_name) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    if (const T* v = std::get_if<T>(&it->second.value)) return *v;
    throw ParseError("key '" + key + "' expects " + std::string(type_name),
                     it->second.line, it->second.column);
  }

  std::optional<double> num(const std::string& key) {
    return take<double>(key, "a number");
  }
  std::optional<bool> flag(const std::string& key) {
    return take<bool>(key, "true or false");
  }
  std::optional<std::string> word(const std::string& key) {
    return take<std::string>(key, "a word");
  }
  std::optional<std::vector<double>> array(const std::string& key) {
    return take<std::vector<double>>(key, "an array");
  }

  int integer(const std::string& key, int fallback) {
    const auto v = num(key);
    if (!v) return fallback;
    if (*v != std::floor(*v) || std::abs(*v) > 1e9)
      throw ParseError("key '" + key + "' expects an integer",
                       entries_.at(key).line, entries_.at(key).column);
    return static_cast<int>(*v);
  }

  int line_of(const std::string& key) const { return entries_.at(key).line; }
  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  void finish() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used)
        throw ParseError("unknown key '" + key + "'", entry.line);
    }
  }

private:
  std::map<std::string, Entry> entries_;
};

problems::OnePhaseISP read_one_phase(KeyBag& bag) {
  problems::OnePhaseISP p;
  p.nu = bag.num("nu").value_or(p.nu);
  p.diffusivity = bag.num("diffusivity").value_or(p.diffusivity);
  p.melt_temp = bag.num("melt_temp").value_or(p.melt_temp);
  p.robin_beta = bag.num("robin_beta").value_or(p.robin_beta);
  p.robin_gamma = bag.num("robin_gamma").value_or(p.robin_gamma);
  p.conductivity = bag.num("conductivity").value_or(p.conductivity);
  p.latent_heat = bag.num("latent_heat").value_or(p.latent_heat);
  p.density = bag.num("density").value_or(p.density);
  p.boundary_coeff = bag.num("boundary_coeff").value_or(p.boundary_coeff);
  p.truncation = bag.integer("truncation", p.truncation);
  p.use_second_family =
      bag.flag("use_second_family").value_or(p.use_second_family);

  const bool has_marker = bag.has("flux");
  const bool has_data = bag.has("flux_taylor");
  if (has_marker && has_data)
    throw ParseError("'flux = unknown' and 'flux_taylor' are mutually exclusive",
                     bag.line_of("flux_taylor"));
  if (has_marker) {
    const auto marker = bag.word("flux");
    if (*marker != "unknown")
      throw ParseError("key 'flux' only accepts the word 'unknown'",
                       bag.line_of("flux"));
  }
  if (has_data) p.flux_taylor = *bag.array("flux_taylor");

  if (auto v = bag.array("front_temp_data")) p.front_temp_data = *v;
  if (auto v = bag.array("front_balance_data")) p.front_balance_data = *v;
  return p;
}

problems::ModelProblemD0 read_model(KeyBag& bag) {
  problems::ModelProblemD0 p;
  p.nu = bag.num("nu").value_or(p.nu);
  p.diffusivity = bag.num("diffusivity").value_or(p.diffusivity);
  p.boundary_coeff = bag.num("boundary_coeff").value_or(p.boundary_coeff);
  p.conductivity = bag.num("conductivity").value_or(p.conductivity);
  p.latent_heat = bag.num("latent_heat").value_or(p.latent_heat);
  p.density = bag.num("density").value_or(p.density);
  p.truncation = bag.integer("truncation", p.truncation);
  if (auto v = bag.array("f_taylor")) p.f_taylor = *v;
  return p;
}

problems::TwoPhaseISP read_two_phase(KeyBag& bag) {
  problems::TwoPhaseISP p;
  p.nu = bag.num("nu").value_or(p.nu);
  p.diffusivity1 = bag.num("diffusivity1").value_or(p.diffusivity1);
  p.diffusivity2 = bag.num("diffusivity2").value_or(p.diffusivity2);
  p.melt_temp = bag.num("melt_temp").value_or(p.melt_temp);
  p.robin_beta = bag.num("robin_beta").value_or(p.robin_beta);
  p.robin_gamma = bag.num("robin_gamma").value_or(p.robin_gamma);
  p.conductivity1 = bag.num("conductivity1").value_or(p.conductivity1);
  p.conductivity2 = bag.num("conductivity2").value_or(p.conductivity2);
  p.latent_heat = bag.num("latent_heat").value_or(p.latent_heat);
  p.density = bag.num("density").value_or(p.density);
  p.boundary_coeff = bag.num("boundary_coeff").value_or(p.boundary_coeff);
  p.truncation = bag.integer("truncation", p.truncation);
  p.collocation_count = bag.integer("collocation_count", p.collocation_count);
  p.horizon = bag.num("horizon").value_or(p.horizon);
  p.use_second_family =
      bag.flag("use_second_family").value_or(p.use_second_family);
  if (auto v = bag.array("initial_profile_taylor"))
    p.initial_profile_taylor = *v;
  if (auto v = bag.num("far_field_cutoff")) p.far_field_cutoff = *v;
  return p;
}

}  // namespace

problems::ProblemSpec parse_problem(std::istream& is) {
  KeyBag bag(is);
  const auto kind = bag.word("kind");
  if (!kind) throw ParseError("missing required key 'kind'", 1);

  problems::ProblemSpec spec;
  if (*kind == "one_phase") {
    spec = read_one_phase(bag);
  } else if (*kind == "model_problem") {
    spec = read_model(bag);
  } else if (*kind == "two_phase") {
    spec = read_two_phase(bag);
  } else {
    throw ParseError("unknown problem kind '" + *kind + "'",
                     bag.line_of("kind"));
  }
  bag.finish();
  return spec;
}

problems::ProblemSpec load_problem(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw std::runtime_error("cannot open problem file: " + path);
  return parse_problem(is);
}

}  // namespace arcflux::io
