#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace manin {

struct Clause {
  std::string name;
  bool pass = false;
  std::string witness;  // empty when the clause passes

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Ordered list of named checks. The verdict is the conjunction of all clauses.
class CheckReport {
 public:
  CheckReport& add(std::string name, bool pass, std::string witness = {}) {
    clauses_.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
    return *this;
  }

  /// Appends the clauses of `other`, prefixing each name with `prefix` when given.
  CheckReport& merge(const CheckReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.clauses_)
      clauses_.push_back({prefix.empty() ? c.name : prefix + c.name, c.pass, c.witness});
    return *this;
  }

  bool passed() const {
    for (const auto& c : clauses_)
      if (!c.pass) return false;
    return true;
  }

  const std::vector<Clause>& clauses() const { return clauses_; }

  std::optional<Clause> first_failure() const {
    for (const auto& c : clauses_)
      if (!c.pass) return c;
    return std::nullopt;
  }

  const Clause* find(const std::string& name) const {
    for (const auto& c : clauses_)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const auto& c : clauses_) n += c.pass ? 0 : 1;
    return n;
  }

 private:
  std::vector<Clause> clauses_;
};

}  // namespace manin
