#include "pointfw/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pointfw/error.hpp"

namespace pointfw::io {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, const std::string& where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, where + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

json atom_params(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, atoms::Intercept>) {
          return json::object();
        } else if constexpr (std::is_same_v<T, atoms::Linear>) {
          return {{"k", a.k}};
        } else if constexpr (std::is_same_v<T, atoms::Monomial>) {
          return {{"k", a.k}, {"power", a.power}};
        } else if constexpr (std::is_same_v<T, atoms::Trig>) {
          return {{"k", a.k}, {"kind", a.kind == atoms::TrigKind::Sin ? "sin" : "cos"}, {"frequency", a.frequency}};
        } else if constexpr (std::is_same_v<T, atoms::Sigmoid>) {
          return {{"k", a.k}, {"z", a.z}, {"a1", a.a1}, {"a2", a.a2}, {"c1", a.c1}, {"c2", a.c2}};
        } else if constexpr (std::is_same_v<T, atoms::Bernstein>) {
          return {{"k", a.k}, {"coefficients", a.coefficients}};
        } else {
          return {{"decay", a.decay}, {"ceiling", a.ceiling}};
        }
      },
      atom);
}

Atom parse_atom(const std::string& family, const json& p) {
  if (family == "intercept") return atoms::Intercept{};
  if (family == "linear") return atoms::Linear{get<std::size_t>(p, "k")};
  if (family == "monomial") return atoms::Monomial{get<std::size_t>(p, "k"), get<int>(p, "power")};
  if (family == "trig") {
    const auto kind = get<std::string>(p, "kind");
    if (kind != "sin" && kind != "cos") throw Error(ErrorCode::ParseError, "trig kind must be sin or cos");
    return atoms::Trig{get<std::size_t>(p, "k"), kind == "sin" ? atoms::TrigKind::Sin : atoms::TrigKind::Cos,
                       get<int>(p, "frequency")};
  }
  if (family == "sigmoid") {
    return atoms::Sigmoid{get<std::size_t>(p, "k"), get<std::size_t>(p, "z"), get<double>(p, "a1"),
                          get<double>(p, "a2"),     get<double>(p, "c1"),     get<double>(p, "c2")};
  }
  if (family == "bernstein") {
    return atoms::Bernstein{get<std::size_t>(p, "k"), get<std::vector<double>>(p, "coefficients")};
  }
  if (family == "hawkes") return atoms::HawkesFeature{get<double>(p, "decay"), get<double>(p, "ceiling")};
  throw Error(ErrorCode::ParseError, "unknown atom family '" + family + "'");
}

std::size_t atom_coordinate(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> std::size_t {
        if constexpr (requires { a.z; }) {
          return std::max(a.k, a.z);
        } else if constexpr (requires { a.k; }) {
          return a.k;
        } else {
          return 0;
        }
      },
      atom);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot rename to " + path.string() + ": " + ec.message());
}

std::vector<double> read_events_csv(const std::filesystem::path& path) {
  const auto lines = lines_of(read_file(path));
  if (lines.empty() || lines[0] != "time") throw Error(ErrorCode::ParseError, path.string() + ": header must be 'time'");
  std::vector<double> out;
  out.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    out.push_back(parse_double(lines[i], path.string() + ":" + std::to_string(i + 1)));
  }
  return out;
}

void write_events_csv(const std::filesystem::path& path, std::span<const double> jumps) {
  std::string s = "time\n";
  for (double t : jumps) s += format_double(t) + "\n";
  write_file(path, s);
}

std::vector<CovariateUpdate> read_covariates_csv(const std::filesystem::path& path) {
  const auto lines = lines_of(read_file(path));
  if (lines.empty()) throw Error(ErrorCode::ParseError, path.string() + ": empty file");
  const auto header = split(lines[0]);
  if (header.size() < 2 || header[0] != "time") {
    throw Error(ErrorCode::ParseError, path.string() + ": header must be 'time,x1,...,xK'");
  }
  const std::size_t K = header.size() - 1;
  std::vector<CovariateUpdate> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto where = path.string() + ":" + std::to_string(i + 1);
    const auto cells = split(lines[i]);
    if (cells.size() != K + 1) throw Error(ErrorCode::DimensionMismatch, where + ": expected " + std::to_string(K + 1) + " fields");
    CovariateUpdate u;
    u.time = parse_double(cells[0], where);
    for (std::size_t k = 0; k < K; ++k) u.values.push_back(parse_double(cells[k + 1], where));
    out.push_back(std::move(u));
  }
  return out;
}

void write_covariates_csv(const std::filesystem::path& path, const EventTimeline& timeline) {
  std::string s = "time";
  for (std::size_t k = 0; k < timeline.dim(); ++k) s += ",x" + std::to_string(k + 1);
  s += "\n";
  for (std::size_t i = 0; i < timeline.num_updates(); ++i) {
    s += format_double(timeline.update_times()[i]);
    for (double v : timeline.update_values(i)) s += "," + format_double(v);
    s += "\n";
  }
  write_file(path, s);
}

EventTimeline load_timeline(const std::filesystem::path& events, const std::filesystem::path& covariates,
                            std::optional<double> horizon) {
  auto jumps = read_events_csv(events);
  auto updates = read_covariates_csv(covariates);
  double end = 0.0;
  for (double t : jumps) end = std::max(end, t);
  for (const auto& u : updates) end = std::max(end, u.time);
  return EventTimeline::build(std::move(updates), std::move(jumps), horizon.value_or(end));
}

std::string atom_params_json(const Atom& atom) { return atom_params(atom).dump(); }

Atom atom_from_json(const std::string& family, const std::string& params_json) {
  return parse_atom(family, parse_json(params_json));
}

std::string model_to_json(const ModelFile& m) {
  json j;
  j["version"] = kModelVersion;
  j["dim"] = m.dim;
  j["preprocessing"] = {{"caps", m.preprocessing.caps}, {"scales", m.preprocessing.scales}};
  j["f0"] = m.fitted.model.offset();
  j["budget"] = m.fitted.model.budget();
  j["weights_scheme"] = m.fitted.model.weight_scheme() == WeightScheme::Unit ? "unit" : "empirical_l2";
  json list = json::array();
  for (const auto& t : m.fitted.model.terms()) {
    list.push_back({{"family", family_name(t.atom)}, {"params", atom_params(t.atom)}, {"coef", t.coef}, {"weight", t.weight}});
  }
  j["atoms"] = std::move(list);
  if (m.fitted.hawkes) j["hawkes"] = {{"c", m.fitted.hawkes->c}, {"a", m.fitted.hawkes->a}};
  return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "model must be a JSON object");
  if (get<int>(j, "version") != kModelVersion) throw Error(ErrorCode::ParseError, "unsupported model version");
  ModelFile m;
  m.dim = get<std::size_t>(j, "dim");
  const auto& pre = j.at("preprocessing");
  m.preprocessing.caps = get<std::vector<double>>(pre, "caps");
  m.preprocessing.scales = get<std::vector<double>>(pre, "scales");
  if (m.preprocessing.caps.size() != m.preprocessing.scales.size() ||
      (!m.preprocessing.caps.empty() && m.preprocessing.caps.size() != m.dim)) {
    throw Error(ErrorCode::ParseError, "preprocessing arrays must have one entry per coordinate");
  }
  m.preprocessing.degenerate.assign(m.preprocessing.caps.size(), false);
  const auto scheme = get<std::string>(j, "weights_scheme");
  if (scheme != "unit" && scheme != "empirical_l2") throw Error(ErrorCode::ParseError, "unknown weights_scheme");
  m.fitted.model = AdditiveModel(get<double>(j, "f0"), get<double>(j, "budget"),
                                 scheme == "unit" ? WeightScheme::Unit : WeightScheme::EmpiricalL2);
  if (!j.contains("atoms") || !j.at("atoms").is_array()) throw Error(ErrorCode::ParseError, "atoms must be an array");
  for (const auto& a : j.at("atoms")) {
    const Atom atom = parse_atom(get<std::string>(a, "family"), a.at("params"));
    if (!std::holds_alternative<atoms::Intercept>(atom) && !std::holds_alternative<atoms::HawkesFeature>(atom) &&
        atom_coordinate(atom) >= m.dim) {
      throw Error(ErrorCode::DimensionMismatch, "atom coordinate outside model dimension");
    }
    m.fitted.model.add(atom, get<double>(a, "coef"), a.contains("weight") ? get<double>(a, "weight") : 1.0);
  }
  if (j.contains("hawkes")) {
    HawkesParams h{get<double>(j.at("hawkes"), "c"), get<double>(j.at("hawkes"), "a")};
    if (!(h.c > 0.0) || !(h.a > 0.0)) throw Error(ErrorCode::ParseError, "hawkes c and a must be positive");
    m.fitted.hawkes = h;
  }
  return m;
}

std::string trace_to_jsonl(const std::vector<TraceRecord>& trace) {
  std::string s;
  for (const auto& r : trace) {
    json j = {{"iter", r.iter}, {"loglik", r.loglik}, {"gap", r.gap}, {"atom", r.atom}, {"rho", r.rho}};
    s += j.dump() + "\n";
  }
  return s;
}

std::string manifest_to_json(const Manifest& m) {
  const auto& d = m.design;
  json j;
  j["K"] = d.K;
  j["rho"] = d.rho;
  j["truth"] = to_string(d.truth);
  j["profile"] = to_string(d.profile);
  j["dynamics"] = to_string(d.dynamics);
  j["n"] = d.n;
  j["seed"] = d.seed;
  j["stream"] = d.stream;
  j["gamma"] = d.gamma;
  j["cap"] = d.cap;
  j["phi"] = d.phi;
  j["explosion_ceiling"] = d.explosion_ceiling;
  j["custom"] = d.is_custom();
  if (d.hawkes) j["hawkes"] = {{"c0", d.hawkes->c0}, {"a0", d.hawkes->a0}, {"excitation", d.hawkes->excitation}};
  j["centering"] = {{"gamma", m.centering.gamma},
                    {"standard_error", m.centering.standard_error},
                    {"draws", m.centering.draws},
                    {"seed", m.centering.seed}};
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  const json j = parse_json(text);
  Manifest m;
  auto& d = m.design;
  d.K = get<std::size_t>(j, "K");
  d.rho = get<double>(j, "rho");
  const auto truth = get<std::string>(j, "truth");
  const auto profile = get<std::string>(j, "profile");
  const auto dynamics = get<std::string>(j, "dynamics");
  d.truth = truth == "convex" ? Truth::Convex : Truth::Linear;
  d.profile = profile == "manysmall" ? Profile::ManySmall : profile == "zero" ? Profile::Zero : Profile::FewLarge;
  d.dynamics = dynamics == "var1" ? Dynamics::Var1 : Dynamics::Iid;
  d.n = get<std::size_t>(j, "n");
  d.seed = get<std::uint64_t>(j, "seed");
  d.stream = get<std::uint64_t>(j, "stream");
  d.gamma = get<double>(j, "gamma");
  d.cap = get<double>(j, "cap");
  d.phi = get<double>(j, "phi");
  d.explosion_ceiling = get<double>(j, "explosion_ceiling");
  if (j.contains("hawkes")) {
    const auto& h = j.at("hawkes");
    d.hawkes = HawkesTruth{get<double>(h, "c0"), get<double>(h, "a0"), get<bool>(h, "excitation")};
  }
  const auto& c = j.at("centering");
  m.centering = {get<double>(c, "gamma"), get<double>(c, "standard_error"), get<std::size_t>(c, "draws"),
                 get<std::uint64_t>(c, "seed")};
  return m;
}

}  // namespace pointfw::io
