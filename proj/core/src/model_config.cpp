#include "bpp/model_config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "bpp/csv.hpp"
#include "bpp/errors.hpp"

namespace bpp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

ModelConfig parse_model_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ValidationError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    static const char* known[] = {"variant", "n_items", "eta", "gamma", "prior", "prior_a", "prior_b", "seed"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ValidationError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    kv[key] = trim(t.substr(eq + 1));
  }

  auto need = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ValidationError("model config is missing '" + key + "'");
    return it->second;
  };
  auto real = [&](const std::string& key) { return parse_real(need(key), key); };
  auto count = [&](const std::string& key) {
    const long long v = parse_integer(need(key), key);
    if (v < 0) throw ValidationError(key + " must be nonnegative");
    return static_cast<std::size_t>(v);
  };

  ModelConfig cfg;
  cfg.variant = need("variant");
  if (kv.count("seed")) {
    const long long s = parse_integer(kv["seed"], "seed");
    if (s < 0) throw ValidationError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (cfg.variant == "mallows") {
    cfg.model = MallowsModel{real("eta"), count("n_items")};
  } else if (cfg.variant == "noisy_sort") {
    cfg.model = NoisySortModel{real("gamma"), count("n_items")};
  } else if (cfg.variant == "btl" || cfg.variant == "thurstone") {
    ParametricModel m;
    m.n_items = count("n_items");
    m.link = cfg.variant == "btl" ? LinkFunction::btl() : LinkFunction::thurstone();
    const std::string prior = kv.count("prior") ? kv["prior"] : "normal";
    if (prior == "normal") m.prior.kind = ScorePrior::Kind::Normal;
    else if (prior == "uniform") m.prior.kind = ScorePrior::Kind::Uniform;
    else throw ValidationError("unknown prior '" + prior + "'");
    if (kv.count("prior_a")) m.prior.a = real("prior_a");
    if (kv.count("prior_b")) m.prior.b = real("prior_b");
    cfg.model = m;
  } else if (cfg.variant == "weak_st_example") {
    cfg.model = weak_st_counterexample();
  } else {
    throw ValidationError("unknown variant '" + cfg.variant + "'");
  }
  validate(cfg.model);
  return cfg;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_config(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace bpp
