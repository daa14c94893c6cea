#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beliefbound {

// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  Input,        // malformed request or file
  Domain,       // mathematically undefined (zero mass, bad range)
  Model,        // structural problem, e.g. a cycle
  Unsupported,  // well-formed but outside what we compute
  Data,         // observations admit no model
  Sampling,     // Monte Carlo produced nothing usable
  AtomLimit,    // canonical space too large
  Internal
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

const char* to_string(ErrorKind kind);

using Assignment = std::map<std::string, int>;

struct Variable {
  std::string name;
  std::vector<int> domain;
  std::vector<std::string> labels;  // parallel to domain; empty for plain integers

  static Variable numeric(std::string name, std::vector<int> domain);
  static Variable labelled(std::string name, std::vector<std::string> labels);

  bool is_labelled() const { return !labels.empty(); }
  bool contains(int value) const;
  std::size_t index_of(int value) const;  // position in domain, throws if absent
  std::string format(int value) const;
  // Accepts a label or an integer literal.
  std::optional<int> parse(const std::string& token) const;
  void validate() const;

  bool operator==(const Variable&) const = default;
};

// Union of two partial assignments. Conflicting values are an input error.
Assignment merge(const Assignment& a, const Assignment& b);

// True when every entry of `partial` appears with the same value in `full`.
bool agrees(const Assignment& full, const Assignment& partial);

std::string to_string(const Assignment& a);

// Calls fn(values) for every configuration of `vars`, last variable fastest.
template <typename Fn>
void for_each_config(const std::vector<Variable>& vars, Fn&& fn) {
  std::vector<std::size_t> idx(vars.size(), 0);
  std::vector<int> values(vars.size());
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) values[i] = vars[i].domain[idx[i]];
    fn(values);
    std::size_t k = vars.size();
    while (true) {
      if (k == 0) return;
      --k;
      if (++idx[k] < vars[k].domain.size()) break;
      idx[k] = 0;
    }
  }
}

// Looks a variable up by name in a list, throwing an input error if absent.
const Variable& find_variable(const std::vector<Variable>& vars, const std::string& name);

}  // namespace beliefbound
