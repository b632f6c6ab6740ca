#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace lval {

struct PropertyTally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::optional<std::string> counterexample;  // first failing witness
};

/// Per-property pass/fail counts from a sampled law check.
class CheckReport {
 public:
  /// Records one trial. The witness is rendered only for the first failure.
  template <class WitnessFn>
  void record(const std::string& property, bool ok, WitnessFn&& witness) {
    PropertyTally& t = tallies_[property];
    if (ok) {
      ++t.pass;
    } else {
      ++t.fail;
      if (!t.counterexample) t.counterexample = std::forward<WitnessFn>(witness)();
    }
  }

  void record(const std::string& property, bool ok) {
    record(property, ok, [] { return std::string("(no witness)"); });
  }

  /// Registers a property with zero trials so it shows up in the output.
  void declare(const std::string& property) { tallies_[property]; }

  bool passed() const {
    for (const auto& [_, t] : tallies_)
      if (t.fail != 0) return false;
    return true;
  }

  bool has(const std::string& property) const { return tallies_.count(property) != 0; }
  const PropertyTally& at(const std::string& property) const { return tallies_.at(property); }
  const std::map<std::string, PropertyTally>& tallies() const { return tallies_; }

  /// Copies every property of `other` in under `prefix + name`.
  void merge(const CheckReport& other, const std::string& prefix = "") {
    for (const auto& [name, t] : other.tallies_) {
      PropertyTally& mine = tallies_[prefix + name];
      mine.pass += t.pass;
      mine.fail += t.fail;
      if (!mine.counterexample && t.counterexample) mine.counterexample = t.counterexample;
    }
  }

  /// {property: {pass, fail, counterexample}} with counterexample null on success.
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, t] : tallies_) {
      out[name] = {{"pass", t.pass},
                   {"fail", t.fail},
                   {"counterexample", t.counterexample ? nlohmann::json(*t.counterexample)
                                                       : nlohmann::json(nullptr)}};
    }
    return out;
  }

 private:
  std::map<std::string, PropertyTally> tallies_;
};

}  // namespace lval
