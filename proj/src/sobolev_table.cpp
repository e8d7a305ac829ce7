#include "nsbox/sobolev_table.hpp"

#include <charconv>
#include <stdexcept>

#include "nsbox/estimators.hpp"
#include "nsbox/io_util.hpp"

namespace nsbox {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::estimated: return "estimated";
    case Provenance::user: return "user";
    case Provenance::literature: return "literature";
  }
  throw std::logic_error("bad provenance value");
}

Provenance provenance_from_name(const std::string& s) {
  if (s == "estimated") return Provenance::estimated;
  if (s == "user") return Provenance::user;
  if (s == "literature") return Provenance::literature;
  throw std::invalid_argument("unknown provenance: " + s);
}

double beta_star(double beta) {
  if (!(beta >= 0.0 && beta < 1.5))
    throw std::invalid_argument("beta_star: beta must lie in [0, 3/2)");
  return 6.0 / (3.0 - 2.0 * beta);
}

std::string SobolevConstantTable::beta_key(double beta) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), beta);
  return std::string(buf, res.ptr);
}

const SobolevEntry& SobolevConstantTable::entry(double beta) const {
  auto it = entries_.find(beta);
  if (it == entries_.end())
    throw std::out_of_range("no constant recorded for beta = " + beta_key(beta));
  return it->second;
}

void SobolevConstantTable::set(double beta, SobolevEntry e) {
  if (!(beta >= 0.0 && beta < 2.0))
    throw std::invalid_argument("constant table: beta must lie in [0, 2)");
  if (!(e.safety_factor >= 1.0))
    throw std::invalid_argument("constant table: safety factor must be >= 1");
  if (e.override && !(*e.override >= e.estimate_lower))
    throw std::invalid_argument(
        "constant table: override below the estimated lower bound is unsound");
  entries_[beta] = std::move(e);
}

double SobolevConstantTable::ensure(double beta, int budget, std::uint64_t seed,
                                    int oversample) {
  if (!has(beta)) {
    SobolevEntry e;
    e.estimate_lower = estimate_sobolev_constant(beta, budget, seed, oversample);
    e.provenance = Provenance::estimated;
    set(beta, e);
  }
  return effective(beta);
}

nlohmann::ordered_json SobolevConstantTable::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "sobolev-constants";
  j["version"] = 1;
  auto& ent = j["entries"] = nlohmann::ordered_json::object();
  for (const auto& [beta, e] : entries_) {
    nlohmann::ordered_json row;
    row["beta"] = beta;
    row["beta_star"] = beta_star(beta);
    row["estimate_lower"] = e.estimate_lower;
    row["safety_factor"] = e.safety_factor;
    if (e.override)
      row["override"] = *e.override;
    else
      row["override"] = nullptr;
    row["provenance"] = provenance_name(e.provenance);
    row["effective"] = e.effective();
    ent[beta_key(beta)] = std::move(row);
  }
  return j;
}

SobolevConstantTable SobolevConstantTable::from_json(const nlohmann::json& j) {
  SobolevConstantTable t;
  if (j.value("format", "") != "sobolev-constants")
    throw std::runtime_error("not a constant-table document");
  for (const auto& [key, row] : j.at("entries").items()) {
    (void)key;
    SobolevEntry e;
    e.estimate_lower = row.at("estimate_lower").get<double>();
    e.safety_factor = row.at("safety_factor").get<double>();
    if (row.contains("override") && !row.at("override").is_null())
      e.override = row.at("override").get<double>();
    e.provenance = provenance_from_name(row.value("provenance", "estimated"));
    t.set(row.at("beta").get<double>(), e);
  }
  return t;
}

void SobolevConstantTable::save(const std::string& path) const {
  atomic_write_file(path, to_json().dump(2) + "\n");
}

SobolevConstantTable SobolevConstantTable::load(const std::string& path) {
  return from_json(nlohmann::json::parse(read_file(path)));
}

}  // namespace nsbox
