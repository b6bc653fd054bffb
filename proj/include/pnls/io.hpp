#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pnls/groundstate.hpp"
#include "pnls/stability.hpp"

namespace pnls {

// Flat JSON object with keys in insertion order and 17-digit numbers.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double v);
  JsonObject& add(const std::string& key, int v);
  JsonObject& add(const std::string& key, bool v);
  JsonObject& add(const std::string& key, const std::string& v);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

// Short tag for file names, e.g. 1e4 -> "10000", 0.5 -> "0.5".
std::string number_tag(double v);

std::string classic_file_stem(double p);
std::string ground_file_stem(double alpha, double p, double omega);
std::string sweep_file_stem(double alpha, double p);

void write_classic_csv(std::ostream& os, const ClassicProfile& cp);
std::string classic_json(const ClassicProfile& cp);

void write_ground_csv(std::ostream& os, const GroundState& gs);
std::string ground_json(const GroundState& gs);

// One row per sweep point; points without a state are written as `failed`.
void write_mass_curve_csv(std::ostream& os, const MassCurve& curve, std::span<const SweepPoint> sweep);
std::string linearized_json(const LinearizedReport& rep);

std::string mass_curve_svg(const MassCurve& curve);

}  // namespace pnls
