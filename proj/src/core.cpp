#include "beliefbound/core.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace beliefbound {

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Model: return "model error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Data: return "data error";
    case ErrorKind::Sampling: return "sampling error";
    case ErrorKind::AtomLimit: return "atom limit";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

Variable Variable::numeric(std::string name, std::vector<int> domain) {
  Variable v{std::move(name), std::move(domain), {}};
  v.validate();
  return v;
}

Variable Variable::labelled(std::string name, std::vector<std::string> labels) {
  Variable v;
  v.name = std::move(name);
  for (std::size_t i = 0; i < labels.size(); ++i) v.domain.push_back(static_cast<int>(i));
  v.labels = std::move(labels);
  v.validate();
  return v;
}

bool Variable::contains(int value) const {
  return std::find(domain.begin(), domain.end(), value) != domain.end();
}

std::size_t Variable::index_of(int value) const {
  auto it = std::find(domain.begin(), domain.end(), value);
  if (it == domain.end())
    fail(ErrorKind::Input, "value " + std::to_string(value) + " outside domain of " + name);
  return static_cast<std::size_t>(it - domain.begin());
}

std::string Variable::format(int value) const {
  if (is_labelled()) return labels.at(index_of(value));
  return std::to_string(value);
}

std::optional<int> Variable::parse(const std::string& token) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == token) return domain[i];
  int value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !contains(value)) return std::nullopt;
  return value;
}

void Variable::validate() const {
  if (name.empty()) fail(ErrorKind::Input, "variable with empty name");
  if (domain.empty()) fail(ErrorKind::Input, "variable " + name + " has an empty domain");
  std::set<int> seen(domain.begin(), domain.end());
  if (seen.size() != domain.size()) fail(ErrorKind::Input, "variable " + name + " repeats a domain value");
  if (!labels.empty()) {
    if (labels.size() != domain.size()) fail(ErrorKind::Input, "variable " + name + " has mismatched labels");
    std::set<std::string> names(labels.begin(), labels.end());
    if (names.size() != labels.size()) fail(ErrorKind::Input, "variable " + name + " repeats a label");
  }
}

Assignment merge(const Assignment& a, const Assignment& b) {
  Assignment out = a;
  for (const auto& [name, value] : b) {
    auto [it, inserted] = out.emplace(name, value);
    if (!inserted && it->second != value)
      fail(ErrorKind::Input, "conflicting values for " + name + ": " + std::to_string(it->second) + " vs " +
                                 std::to_string(value));
  }
  return out;
}

bool agrees(const Assignment& full, const Assignment& partial) {
  for (const auto& [name, value] : partial) {
    auto it = full.find(name);
    if (it == full.end() || it->second != value) return false;
  }
  return true;
}

std::string to_string(const Assignment& a) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [name, value] : a) {
    if (!first) os << ", ";
    first = false;
    os << name << '=' << value;
  }
  os << '}';
  return os.str();
}

const Variable& find_variable(const std::vector<Variable>& vars, const std::string& name) {
  for (const auto& v : vars)
    if (v.name == name) return v;
  fail(ErrorKind::Input, "unknown variable " + name);
}

}  // namespace beliefbound
