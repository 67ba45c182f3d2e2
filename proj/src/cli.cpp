#include "hypersq/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "hypersq/analysis.hpp"
#include "hypersq/certify.hpp"
#include "hypersq/conformal.hpp"
#include "hypersq/hyperbolic.hpp"
#include "hypersq/parallel.hpp"
#include "hypersq/smetric.hpp"

namespace hypersq::cli {

namespace {

using Json = nlohmann::ordered_json;

bool parse_real(std::string_view text, double& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(value);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = fmt17(z.real());
  const double im = z.imag();
  out += (std::signbit(im) ? "-" : "+") + fmt17(std::abs(im)) + "i";
  return out;
}

struct Options {
  int grid = 33;
  long long n = 100000;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string format;
  std::string output;
  std::string x;
  std::string y;
  std::string direction;
  std::string point;
};

Tolerances tolerances_from(const Options& opt) {
  Tolerances tol;
  if (opt.tol > 0.0) {
    tol.newton_tol = opt.tol;
    tol.quad_tol = std::min(tol.quad_tol, opt.tol / 10.0);
  }
  return tol;
}

// A row-oriented record rendered as a two-line CSV or a JSON object.
class Record {
 public:
  Record& add(const std::string& key, double v) {
    keys_.push_back(key);
    csv_.push_back(fmt17(v));
    json_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, const std::string& v) {
    keys_.push_back(key);
    csv_.push_back(v);
    json_[key] = v;
    return *this;
  }
  Record& add_count(const std::string& key, std::size_t v) {
    keys_.push_back(key);
    csv_.push_back(std::to_string(v));
    json_[key] = v;
    return *this;
  }
  Json& json() { return json_; }

  std::string render(const std::string& format) const {
    if (format == "json") return json_.dump(2) + "\n";
    std::string out;
    for (std::size_t i = 0; i < keys_.size(); ++i) out += (i ? "," : "") + keys_[i];
    out += "\n";
    for (std::size_t i = 0; i < csv_.size(); ++i) out += (i ? "," : "") + csv_[i];
    return out + "\n";
  }

 private:
  std::vector<std::string> keys_;
  std::vector<std::string> csv_;
  Json json_ = Json::object();
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.output.empty() || opt.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary);
  if (!file) throw IoFailure("cannot open output file: " + opt.output);
  file << text;
  if (!file) throw IoFailure("failed writing output file: " + opt.output);
}

Complex require_complex(const std::string& text) {
  const auto z = parse_complex(text);
  if (!z) throw DomainError("cannot parse complex number: '" + text + "'");
  return *z;
}

int cmd_dist(const Options& opt, std::ostream& out) {
  const Tolerances tol = tolerances_from(opt);
  const SquarePoint x(require_complex(opt.x));
  const SquarePoint y(require_complex(opt.y));

  Record rec;
  rec.add("x", format_complex(x.value())).add("y", format_complex(y.value()));
  if (x.value() == y.value()) {
    rec.add("s", 0.0).add("th_half", 0.0).add("rho", 0.0).add("ratio", local_limit(x, tol));
  } else {
    const HypDistance h = rho_square(x, y, tol);
    const double s = s_metric(x, y);
    rec.add("s", s).add("th_half", h.th_half).add("rho", h.rho).add("ratio", h.th_half / s);
  }
  const CanonicalPair canon = canonicalize(x, y);
  Side side = Side::DA;
  double best = side_detour(x, y, Side::DA);
  for (Side candidate : {Side::AB, Side::BC, Side::CD}) {
    const double d = side_detour(x, y, candidate);
    if (d < best) {
      best = d;
      side = candidate;
    }
  }
  rec.add("region", std::string(to_string(classify_region(canon.x, canon.y))));
  rec.add("side", std::string(to_string(side)));
  emit(opt, rec.render(opt.format.empty() ? "csv" : opt.format), out);
  return kOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  if (opt.grid < 8) throw DomainError("--grid must be >= 8");
  const Tolerances tol = tolerances_from(opt);
  const auto n = static_cast<std::size_t>(opt.grid);
  std::vector<std::array<double, 4>> rows(n * n);
  parallel_for(rows.size(), [&](std::size_t k) {
    const double re = -1.0 + (2.0 * static_cast<double>(k % n) + 1.0) / opt.grid;
    const double im = -1.0 + (2.0 * static_cast<double>(k / n) + 1.0) / opt.grid;
    const SquarePoint x(re, im);
    const double radius = conformal_radius(x, tol);
    rows[k] = {re, im, 2.0 * x.boundary_distance() / radius, radius};
  });

  std::string text;
  if (opt.format == "json") {
    Json j = {{"schema", 1}, {"rows", Json::array()}};
    for (const auto& r : rows) {
      j["rows"].push_back({{"re", r[0]}, {"im", r[1]}, {"local_limit", r[2]}, {"conformal_radius", r[3]}});
    }
    text = j.dump(2) + "\n";
  } else {
    text = "re,im,local_limit,conformal_radius\n";
    for (const auto& r : rows) {
      text += fmt17(r[0]) + "," + fmt17(r[1]) + "," + fmt17(r[2]) + "," + fmt17(r[3]) + "\n";
    }
  }
  emit(opt, text, out);
  return kOk;
}

int cmd_maximize(const Options& opt, std::ostream& out) {
  if (opt.grid < 8) throw DomainError("--grid must be >= 8");
  if (opt.n < 0) throw DomainError("--n must be >= 0");
  const MaximizeResult res = maximize_ratio(opt.grid, static_cast<int>(opt.n), opt.seed, tolerances_from(opt));
  Record rec;
  rec.add("a", res.structured_config.a)
      .add("u1", res.structured_config.u1)
      .add("u2", res.structured_config.u2)
      .add("structured_ratio", res.structured.ratio)
      .add("unstructured_ratio", res.unstructured.ratio)
      .add("unstructured_x", format_complex(res.unstructured.x.value()))
      .add("unstructured_y", format_complex(res.unstructured.y.value()))
      .add("sharp_constant", sharp_constant());
  emit(opt, rec.render(opt.format.empty() ? "csv" : opt.format), out);
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  if (opt.n < 1) throw DomainError("--n must be >= 1");
  const VerifyReport rep = verify_theorem(static_cast<std::size_t>(opt.n), opt.seed, tolerances_from(opt));
  Record rec;
  rec.add_count("n", rep.n)
      .add_count("seed", opt.seed)
      .add("min_ratio", rep.min_ratio)
      .add("max_ratio", rep.max_ratio)
      .add_count("violations", rep.violations);
  if (opt.format == "json") {
    rec.json()["histogram"] = {{"lo", rep.histogram_lo}, {"hi", rep.histogram_hi}, {"counts", rep.histogram}};
    rec.json()["argmax"] = {{"x", format_complex(rep.argmax.x.value())}, {"y", format_complex(rep.argmax.y.value())}};
  }
  emit(opt, rec.render(opt.format.empty() ? "csv" : opt.format), out);
  return rep.passed() ? kOk : kVerificationFailed;
}

int cmd_certify(const Options& opt, std::ostream& out) {
  const CertReport report = full_certify(opt.seed);
  emit(opt, opt.format == "csv" ? to_csv(report) : to_json(report), out);
  return report.passed() ? kOk : kVerificationFailed;
}

int cmd_map(const Options& opt, std::ostream& out) {
  const Tolerances tol = tolerances_from(opt);
  const Complex input = require_complex(opt.point);
  Complex image;
  double residual = 0.0;
  if (opt.direction == "fwd") {
    const DiscPoint z(input);
    const SquarePoint w = forward_map(z, tol);
    image = w.value();
    residual = w.boundary_distance() > SquarePoint::kSlack || std::abs(z.value()) < 1.0
                   ? std::abs(inverse_map(w, tol).value() - z.value())
                   : 0.0;
  } else if (opt.direction == "inv") {
    const SquarePoint w(input);
    const DiscPoint z = inverse_map(w, tol);
    image = z.value();
    residual = std::abs(forward_map(z, tol).value() - w.value());
  } else {
    throw DomainError("map direction must be 'fwd' or 'inv'");
  }
  Record rec;
  rec.add("direction", opt.direction)
      .add("re_in", input.real())
      .add("im_in", input.imag())
      .add("re_out", image.real())
      .add("im_out", image.imag())
      .add("residual", residual);
  emit(opt, rec.render(opt.format.empty() ? "csv" : opt.format), out);
  return kOk;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i' && s.back() != 'j') {
    double re = 0.0;
    if (!parse_real(s, re)) return std::nullopt;
    return Complex(re, 0.0);
  }
  s.pop_back();
  // Split before the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_text = split == std::string::npos ? s : s.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  double re = 0.0;
  double im = 0.0;
  if (!re_text.empty() && !parse_real(re_text, re)) return std::nullopt;
  if (!parse_real(im_text, im)) return std::nullopt;
  return Complex(re, im);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hyperbolic vs. triangular ratio metric in the square [-1,1]^2", "hypersq"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Newton residual tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", opt.output, "Output path (default: standard output)");
  };

  CLI::App* dist = app.add_subcommand("dist", "Metrics between two points of the square");
  dist->add_option("x", opt.x, "first point, e.g. 0-0.5i")->required();
  dist->add_option("y", opt.y, "second point")->required();
  add_common(dist);

  CLI::App* sweep = app.add_subcommand("sweep", "Local limit 2d/r over an interior grid");
  sweep->add_option("--grid", opt.grid, "points per axis")->capture_default_str();
  add_common(sweep);

  CLI::App* maximize = app.add_subcommand("maximize", "Extremal search for the ratio");
  maximize->add_option("--grid", opt.grid, "grid resolution")->capture_default_str();
  maximize->add_option("--n", opt.n, "pattern-search iterations")->capture_default_str();
  maximize->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  add_common(maximize);

  CLI::App* verify = app.add_subcommand("verify", "Sample random pairs and check both bounds");
  verify->add_option("--n", opt.n, "number of pairs")->capture_default_str();
  verify->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  add_common(verify);

  CLI::App* certify = app.add_subcommand("certify", "Reproduce the published constants");
  certify->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  add_common(certify);

  CLI::App* map = app.add_subcommand("map", "Evaluate the conformal map or its inverse");
  map->add_option("direction", opt.direction, "fwd or inv")->required()->check(CLI::IsMember({"fwd", "inv"}));
  map->add_option("point", opt.point, "complex point")->required();
  add_common(map);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  if (maximize->parsed() && !maximize->count("--grid")) opt.grid = 64;
  if (maximize->parsed() && !maximize->count("--n")) opt.n = 40;

  try {
    if (dist->parsed()) return cmd_dist(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (maximize->parsed()) return cmd_maximize(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (certify->parsed()) return cmd_certify(opt, out);
    if (map->parsed()) return cmd_map(opt, out);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kDomainError;
}

}  // namespace hypersq::cli
