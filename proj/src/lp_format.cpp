// LP and fixed-format MPS writers for IlpModel, plus a reader for the LP
// dialect written here.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "limsat/error.hpp"
#include "limsat/ilp.hpp"

namespace limsat::ilp {

namespace {

constexpr std::size_t kTermsPerLine = 8;
constexpr std::size_t kNamesPerLine = 10;

void WriteExpression(std::ostream& out, const std::vector<Term>& terms) {
  std::size_t written = 0;
  for (const Term& t : terms) {
    if (t.coef == 0) continue;
    if (written > 0 && written % kTermsPerLine == 0) out << "\n   ";
    const std::int64_t magnitude = t.coef < 0 ? -t.coef : t.coef;
    if (t.coef < 0) {
      out << (written == 0 ? "- " : " - ");
    } else if (written > 0) {
      out << " + ";
    }
    if (magnitude != 1) out << magnitude << ' ';
    out << binary_name(t.binary);
    ++written;
  }
}

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Fields start at columns 2, 5, 15 and 25. Names longer than eight characters
// push later fields right, which free-format readers still accept.
std::string MpsLine(const std::string& f1, const std::string& f2,
                    const std::string& f3 = {}, const std::string& f4 = {}) {
  std::string line = " " + Pad(f1, 2) + " " + Pad(f2, 8) + "  " +
                     Pad(f3, 8) + "  " + f4;
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line;
}

struct ColumnEntry {
  const std::string* row;
  std::int64_t coef;
};

}  // namespace

std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "\\ LIMSAT 0-1 model: " << model.num_binaries << " binaries, "
      << model.constraints.size() << " constraints\n";
  out << "Minimize\n obj:";
  std::vector<Term> objective;
  for (std::size_t b = 0; b < model.objective.size(); ++b) {
    objective.push_back({static_cast<std::int32_t>(b), model.objective[b]});
  }
  if (std::any_of(objective.begin(), objective.end(),
                  [](const Term& t) { return t.coef != 0; })) {
    out << ' ';
    WriteExpression(out, objective);
  }
  out << "\nSubject To\n";
  for (const Constraint& c : model.constraints) {
    out << ' ' << c.name << ": ";
    WriteExpression(out, c.terms);
    out << (c.sense == Sense::kLessEqual ? " <= " : " >= ") << c.rhs << '\n';
  }
  out << "Binary\n";
  for (std::int32_t b = 0; b < model.num_binaries; ++b) {
    out << ' ' << binary_name(b);
    if ((b + 1) % kNamesPerLine == 0 || b + 1 == model.num_binaries) {
      out << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

std::string export_mps(const IlpModel& model) {
  std::ostringstream out;
  out << "NAME          LIMSAT\n";
  out << "ROWS\n";
  out << MpsLine("N", "obj") << '\n';
  for (const Constraint& c : model.constraints) {
    out << MpsLine(c.sense == Sense::kLessEqual ? "L" : "G", c.name) << '\n';
  }

  std::vector<std::vector<ColumnEntry>> columns(
      static_cast<std::size_t>(model.num_binaries));
  static const std::string kObjective = "obj";
  for (std::size_t b = 0; b < model.objective.size(); ++b) {
    if (model.objective[b] != 0) {
      columns[b].push_back({&kObjective, model.objective[b]});
    }
  }
  for (const Constraint& c : model.constraints) {
    for (const Term& t : c.terms) {
      columns[static_cast<std::size_t>(t.binary)].push_back({&c.name, t.coef});
    }
  }
  out << "COLUMNS\n";
  for (std::size_t b = 0; b < columns.size(); ++b) {
    const std::string name = binary_name(static_cast<std::int32_t>(b));
    for (const ColumnEntry& e : columns[b]) {
      out << MpsLine("", name, *e.row, std::to_string(e.coef)) << '\n';
    }
  }
  out << "RHS\n";
  for (const Constraint& c : model.constraints) {
    if (c.rhs != 0) {
      out << MpsLine("", "RHS", c.name, std::to_string(c.rhs)) << '\n';
    }
  }
  out << "BOUNDS\n";
  for (std::int32_t b = 0; b < model.num_binaries; ++b) {
    out << MpsLine("BV", "BND", binary_name(b)) << '\n';
  }
  out << "ENDATA\n";
  return out.str();
}

// --- LP reader --------------------------------------------------------------

namespace {

enum class Section { kNone, kObjective, kConstraints, kBinary, kEnd };

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view TrimView(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

bool ToInt(std::string_view token, std::int64_t& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return !token.empty() && ec == std::errc() && ptr == end;
}

class TokenCursor {
 public:
  explicit TokenCursor(const std::vector<std::string>& tokens)
      : tokens_(tokens) {}
  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const { return tokens_[pos_]; }
  const std::string& next() {
    if (done()) Fail("unexpected end of section");
    return tokens_[pos_++];
  }

 private:
  const std::vector<std::string>& tokens_;
  std::size_t pos_ = 0;
};

bool IsSense(const std::string& t) { return t == "<=" || t == ">="; }

// Reads "[+|-] [coef] name" terms until the cursor is exhausted or a sense
// token comes up.
std::vector<Term> ReadExpression(TokenCursor& cur) {
  std::vector<Term> terms;
  bool first = true;
  while (!cur.done() && !IsSense(cur.peek())) {
    std::int64_t sign = 1;
    std::string token = cur.next();
    if (token == "+" || token == "-") {
      sign = token == "-" ? -1 : 1;
      token = cur.next();
    } else if (!first) {
      Fail("missing operator before '" + token + "'");
    }
    std::int64_t coef = 1;
    if (ToInt(token, coef)) {
      token = cur.next();
    } else {
      coef = 1;
    }
    const std::int32_t binary = binary_index(token);
    if (binary < 0) Fail("unknown variable '" + token + "'");
    terms.push_back({binary, sign * coef});
    first = false;
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.binary < b.binary; });
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].binary == terms[i - 1].binary) {
      Fail("variable " + binary_name(terms[i].binary) + " repeated");
    }
  }
  return terms;
}

}  // namespace

IlpModel import_lp(std::string_view text) {
  std::vector<std::string> objective_tokens;
  std::vector<std::string> constraint_tokens;
  std::vector<std::string> binary_tokens;
  Section section = Section::kNone;
  bool saw_objective = false;
  bool saw_constraints = false;
  bool saw_binary = false;

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = TrimView(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '\\') continue;

    const std::string lowered = Lower(line);
    if (lowered == "minimize") {
      section = Section::kObjective;
      saw_objective = true;
      continue;
    }
    if (lowered == "subject to") {
      section = Section::kConstraints;
      saw_constraints = true;
      continue;
    }
    if (lowered == "binary") {
      section = Section::kBinary;
      saw_binary = true;
      continue;
    }
    if (lowered == "end") {
      section = Section::kEnd;
      continue;
    }

    std::vector<std::string>* sink = nullptr;
    switch (section) {
      case Section::kObjective: sink = &objective_tokens; break;
      case Section::kConstraints: sink = &constraint_tokens; break;
      case Section::kBinary: sink = &binary_tokens; break;
      case Section::kNone:
      case Section::kEnd:
        Fail("content outside a section: '" + std::string(line) + "'");
    }
    std::istringstream words{std::string(line)};
    for (std::string w; words >> w;) sink->push_back(w);
  }
  if (!saw_objective || !saw_constraints || !saw_binary ||
      section != Section::kEnd) {
    Fail("missing Minimize, Subject To, Binary or End section");
  }

  IlpModel model;
  model.num_binaries = static_cast<std::int32_t>(binary_tokens.size());
  for (std::size_t b = 0; b < binary_tokens.size(); ++b) {
    if (binary_index(binary_tokens[b]) != static_cast<std::int32_t>(b)) {
      Fail("binary section out of order at '" + binary_tokens[b] + "'");
    }
  }
  auto check_range = [&](const std::vector<Term>& terms) {
    for (const Term& t : terms) {
      if (t.binary >= model.num_binaries) {
        Fail(binary_name(t.binary) + " is not declared binary");
      }
    }
  };

  TokenCursor obj(objective_tokens);
  if (obj.done() || obj.next() != "obj:") Fail("objective must be named obj");
  const std::vector<Term> objective = ReadExpression(obj);
  if (!obj.done()) Fail("unexpected '" + obj.peek() + "' in objective");
  check_range(objective);
  model.objective.assign(static_cast<std::size_t>(model.num_binaries), 0);
  for (const Term& t : objective) {
    model.objective[static_cast<std::size_t>(t.binary)] = t.coef;
  }

  TokenCursor cur(constraint_tokens);
  while (!cur.done()) {
    const std::string& label = cur.next();
    if (label.size() < 2 || label.back() != ':') {
      Fail("expected constraint name, got '" + label + "'");
    }
    Constraint c;
    c.name = label.substr(0, label.size() - 1);
    c.terms = ReadExpression(cur);
    check_range(c.terms);
    const std::string& sense = cur.next();
    if (!IsSense(sense)) Fail("expected <= or >= in " + c.name);
    c.sense = sense == "<=" ? Sense::kLessEqual : Sense::kGreaterEqual;
    if (!ToInt(cur.next(), c.rhs)) Fail("non-integer rhs in " + c.name);
    model.constraints.push_back(std::move(c));
  }
  return model;
}

}  // namespace limsat::ilp
