#include "pnls/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "pnls/format.hpp"

namespace pnls {
namespace {

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

JsonObject& JsonObject::add(const std::string& key, double v) {
  items_.emplace_back(key, json_number(v));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, int v) {
  items_.emplace_back(key, std::to_string(v));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, bool v) {
  items_.emplace_back(key, v ? "true" : "false");
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const std::string& v) {
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"' || ch == '\\') q += '\\';
    q += ch;
  }
  items_.emplace_back(key, q + "\"");
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{\n";
  for (size_t i = 0; i < items_.size(); ++i) {
    out += "  \"" + items_[i].first + "\": " + items_[i].second;
    out += i + 1 < items_.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

std::string number_tag(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string classic_file_stem(double p) { return "classic_p" + number_tag(p); }
std::string ground_file_stem(double alpha, double p, double omega) {
  return "ground_a" + number_tag(alpha) + "_p" + number_tag(p) + "_w" + number_tag(omega);
}
std::string sweep_file_stem(double alpha, double p) { return "sweep_a" + number_tag(alpha) + "_p" + number_tag(p); }

void write_classic_csv(std::ostream& os, const ClassicProfile& cp) {
  os << "r,u\n";
  for (int i = 0; i < cp.grid->n(); ++i) os << format_number(cp.grid->r(i)) << ',' << format_number(cp.u[i]) << '\n';
}

std::string classic_json(const ClassicProfile& cp) {
  return JsonObject()
      .add("p", cp.p)
      .add("u0", cp.u0)
      .add("mass", cp.mass)
      .add("action", cp.action_infty)
      .add("lp_norm_pow", cp.lp_norm_pow)
      .add("gradient_sq", cp.gradient_sq)
      .add("nehari_residual", cp.nehari_residual)
      .add("pohozaev_residual", cp.pohozaev_residual)
      .add("grid_n", cp.grid->n())
      .add("grid_r", cp.grid->r_max())
      .str();
}

void write_ground_csv(std::ostream& os, const GroundState& gs) {
  const Profile& pr = gs.profile;
  const Vec phi = pr.phi();
  os << "r,f,phi\n";
  for (int i = 0; i < pr.grid->n(); ++i)
    os << format_number(pr.grid->r(i)) << ',' << format_number(pr.f[i]) << ',' << format_number(phi[i]) << '\n';
}

std::string ground_json(const GroundState& gs) {
  const Profile& pr = gs.profile;
  return JsonObject()
      .add("alpha", pr.alpha)
      .add("p", pr.p)
      .add("omega", pr.omega)
      .add("beta", pr.beta)
      .add("f0", pr.f0)
      .add("action", gs.action)
      .add("nehari_residual", gs.nehari_residual)
      .add("pohozaev_residual", gs.pohozaev_residual)
      .add("mass_rescaled", gs.mass_rescaled)
      .add("mass_physical", gs.mass_physical)
      .add("energy", gs.energy)
      .add("newton_iters", gs.newton_iters)
      .add("converged", gs.converged)
      .str();
}

void write_mass_curve_csv(std::ostream& os, const MassCurve& curve, std::span<const SweepPoint> sweep) {
  os << "omega,beta,mass,mass_rescaled,f0,action,dmass,dmass_asymptotic,classification\n";
  size_t k = 0;
  for (const auto& pt : sweep) {
    if (!pt.state) {
      os << format_number(pt.omega) << ",nan,nan,nan,nan,nan,nan,nan,failed\n";
      continue;
    }
    os << format_number(curve.omegas[k]) << ',' << format_number(curve.beta[k]) << ','
       << format_number(curve.mass[k]) << ',' << format_number(curve.mass_rescaled[k]) << ','
       << format_number(curve.f0[k]) << ',' << format_number(curve.action[k]) << ','
       << format_number(curve.dmass[k]) << ',' << format_number(curve.dmass_asymptotic[k]) << ','
       << to_string(curve.classification[k]) << '\n';
    ++k;
  }
}

std::string linearized_json(const LinearizedReport& rep) {
  return JsonObject()
      .add("omega", rep.omega)
      .add("beta", rep.beta)
      .add("smallest_abs_eig", rep.smallest_abs_eig)
      .add("coercivity_eig", rep.coercivity_eig)
      .add("lowest_eig", rep.lowest_eig)
      .add("regular_block_eig", rep.regular_block_eig)
      .add("dims", rep.dims)
      .str();
}

std::string mass_curve_svg(const MassCurve& curve) {
  const double width = 720, height = 440, left = 80, right = 20, top = 30, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;
  const size_t n = curve.omegas.size();
  double xmin = std::log10(curve.omegas.front()), xmax = std::log10(curve.omegas.back());
  if (xmax <= xmin) xmax = xmin + 1.0;
  double ymin = *std::min_element(curve.mass.begin(), curve.mass.end());
  double ymax = *std::max_element(curve.mass.begin(), curve.mass.end());
  if (ymax <= ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto sx = [&](double om) { return left + pw * (std::log10(om) - xmin) / (xmax - xmin); };
  auto sy = [&](double m) { return top + ph * (1.0 - (m - ymin) / (ymax - ymin)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = int(std::ceil(xmin - 1e-12)); d <= int(std::floor(xmax + 1e-12)); ++d) {
    const double x = left + pw * (d - xmin) / (xmax - xmin);
    os << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(x, 2) << "\" y2=\""
       << top + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(x, 2) << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\">1e" << d
       << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double m = ymin + (ymax - ymin) * t / 4.0;
    const double y = sy(m);
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << left << "\" y2=\"" << fixed(y, 2)
       << "\" stroke=\"black\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", m);
    os << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4, 2) << "\" text-anchor=\"end\">" << buf
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">omega</text>\n";
  os << "<text x=\"20\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 20 " << top + ph / 2
     << ")\" text-anchor=\"middle\">mass</text>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"18\" text-anchor=\"middle\">alpha = " << number_tag(curve.alpha)
     << ", p = " << number_tag(curve.p) << "</text>\n";

  os << "<polyline fill=\"none\" stroke=\"#3060a0\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < n; ++i)
    os << (i ? " " : "") << fixed(sx(curve.omegas[i]), 2) << ',' << fixed(sy(curve.mass[i]), 2);
  os << "\"/>\n";
  for (size_t i = 0; i < n; ++i) {
    const double x = sx(curve.omegas[i]), y = sy(curve.mass[i]);
    switch (curve.classification[i]) {
      case Classification::stable:
        os << "<circle class=\"stable\" cx=\"" << fixed(x, 2) << "\" cy=\"" << fixed(y, 2)
           << "\" r=\"4\" fill=\"#208040\"/>\n";
        break;
      case Classification::unstable:
        os << "<rect class=\"unstable\" x=\"" << fixed(x - 4, 2) << "\" y=\"" << fixed(y - 4, 2)
           << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#c02020\" stroke-width=\"1.5\"/>\n";
        break;
      default:
        os << "<circle class=\"inconclusive\" cx=\"" << fixed(x, 2) << "\" cy=\"" << fixed(y, 2)
           << "\" r=\"3\" fill=\"none\" stroke=\"gray\"/>\n";
    }
  }
  os << "<circle cx=\"" << left + 15 << "\" cy=\"" << top + 15 << "\" r=\"4\" fill=\"#208040\"/>"
     << "<text x=\"" << left + 25 << "\" y=\"" << top + 19 << "\">stable</text>\n";
  os << "<rect x=\"" << left + 11 << "\" y=\"" << top + 29 << "\" width=\"8\" height=\"8\" fill=\"none\" "
     << "stroke=\"#c02020\" stroke-width=\"1.5\"/><text x=\"" << left + 25 << "\" y=\"" << top + 37
     << "\">unstable</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace pnls
