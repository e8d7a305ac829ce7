#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace nsbox {

enum class Provenance { estimated, user, literature };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

// One embedding constant record.  estimate_lower is a numerically found
// lower bound on the true constant; the effective value used in certificates
// is inflated by safety_factor (or pinned by an explicit override), so it
// plays the upper-bound role.  Over-estimating only shrinks margins.
struct SobolevEntry {
  double estimate_lower = 0.0;
  double safety_factor = 1.5;
  std::optional<double> override;
  Provenance provenance = Provenance::estimated;

  double effective() const {
    return override ? *override : estimate_lower * safety_factor;
  }
};

// beta -> critical exponent 6/(3-2*beta) of the embedding H^beta -> L^{beta*}.
double beta_star(double beta);

class SobolevConstantTable {
 public:
  // Canonical (shortest round-trip) decimal key for a beta value.
  static std::string beta_key(double beta);

  bool has(double beta) const { return entries_.count(beta) != 0; }
  const SobolevEntry& entry(double beta) const;
  double effective(double beta) const { return entry(beta).effective(); }
  void set(double beta, SobolevEntry e);

  // Estimate-and-insert when absent; returns the effective value either way.
  double ensure(double beta, int budget, std::uint64_t seed, int oversample = 3);

  const std::map<double, SobolevEntry>& entries() const { return entries_; }

  nlohmann::ordered_json to_json() const;
  static SobolevConstantTable from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static SobolevConstantTable load(const std::string& path);

 private:
  std::map<double, SobolevEntry> entries_;
};

}  // namespace nsbox
