#include "envs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "packing.hpp"

namespace gb {

namespace {

void check_losses(std::span<const double> losses) {
  for (double v : losses) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw ContractViolation("environment produced a loss outside [0, 1]");
    }
  }
}

class HardEnv final : public Environment {
 public:
  HardEnv(int n, HardInstance hi, uint64_t seed)
      : n_(n), hi_(std::move(hi)), rng_(Rng(seed).split("hard-env")) {
    std::sort(hi_.packing_set.begin(), hi_.packing_set.end());
    means_.assign(n_, 1.0);
    for (int v : hi_.packing_set) means_[v] = v == hi_.special_arm ? 0.5 - hi_.epsilon : 0.5;
  }

  int num_arms() const override { return n_; }

  std::vector<double> losses(int64_t round) override {
    if (round != next_round_++) {
      throw ContractViolation("stochastic environment queried out of order");
    }
    std::vector<double> out(n_, 1.0);
    // One draw per (round, rank in S): relabeling the set permutes traces.
    for (int v : hi_.packing_set) {
      out[v] = rng_.bernoulli(means_[v]) ? 1.0 : 0.0;
    }
    check_losses(out);
    return out;
  }

  std::optional<std::vector<double>> mean_losses() const override { return means_; }

  std::string descriptor() const override {
    std::string s = "hard:S=";
    for (size_t i = 0; i < hi_.packing_set.size(); ++i) {
      if (i) s += ";";
      s += std::to_string(hi_.packing_set[i]);
    }
    s += ",j=" + std::to_string(hi_.special_arm) + ",eps=" + std::to_string(hi_.epsilon) +
         ",k=" + std::to_string(hi_.packing_k);
    return s;
  }

 private:
  int n_;
  HardInstance hi_;
  Rng rng_;
  std::vector<double> means_;
  int64_t next_round_ = 1;
};

class ConstEnv final : public Environment {
 public:
  explicit ConstEnv(std::vector<double> losses) : losses_(std::move(losses)) {
    check_losses(losses_);
  }
  int num_arms() const override { return static_cast<int>(losses_.size()); }
  std::vector<double> losses(int64_t) override { return losses_; }
  std::optional<std::vector<double>> mean_losses() const override { return losses_; }
  std::string descriptor() const override { return "const"; }

 private:
  std::vector<double> losses_;
};

class BernoulliEnv final : public Environment {
 public:
  BernoulliEnv(std::vector<double> means, uint64_t seed)
      : means_(std::move(means)), rng_(Rng(seed).split("bernoulli-env")) {
    check_losses(means_);
  }
  int num_arms() const override { return static_cast<int>(means_.size()); }
  std::vector<double> losses(int64_t round) override {
    if (round != next_round_++) {
      throw ContractViolation("stochastic environment queried out of order");
    }
    std::vector<double> out(means_.size());
    for (size_t i = 0; i < means_.size(); ++i) out[i] = rng_.bernoulli(means_[i]) ? 1.0 : 0.0;
    return out;
  }
  std::optional<std::vector<double>> mean_losses() const override { return means_; }
  std::string descriptor() const override { return "bernoulli"; }

 private:
  std::vector<double> means_;
  Rng rng_;
  int64_t next_round_ = 1;
};

class FileEnv final : public Environment {
 public:
  FileEnv(std::vector<std::vector<double>> rows, std::string path)
      : rows_(std::move(rows)), path_(std::move(path)) {}
  int num_arms() const override { return static_cast<int>(rows_.front().size()); }
  std::vector<double> losses(int64_t round) override {
    if (round < 1 || round > static_cast<int64_t>(rows_.size())) {
      throw BadInput("loss file has " + std::to_string(rows_.size()) +
                     " rounds; round " + std::to_string(round) + " requested");
    }
    return rows_[round - 1];
  }
  std::string descriptor() const override { return "file:" + path_; }

 private:
  std::vector<std::vector<double>> rows_;
  std::string path_;
};

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw BadInput("bad numeric value '" + item + "' in environment spec");
    }
  }
  if (values.empty()) throw BadInput("empty value list in environment spec");
  return values;
}

std::vector<double> broadcast(std::vector<double> values, int n, const char* what) {
  if (static_cast<int>(values.size()) == 1) values.assign(n, values[0]);
  if (static_cast<int>(values.size()) != n) {
    throw BadInput(std::string(what) + " list must have 1 or n entries");
  }
  return values;
}

}  // namespace

double hard_epsilon_pack(int packing_size, int k, int64_t horizon) {
  if (packing_size < 1 || k < 1 || horizon < 1) throw BadInput("bad epsilon schedule inputs");
  return std::cbrt(static_cast<double>(packing_size) / (static_cast<double>(k) * horizon));
}

double hard_epsilon_log(int packing_size, int64_t horizon) {
  if (packing_size < 2 || horizon < 1) throw BadInput("bad epsilon schedule inputs");
  return std::cbrt(std::log(static_cast<double>(packing_size)) / static_cast<double>(horizon));
}

std::unique_ptr<Environment> hard_instance_env(const DirectedGraph& g, const HardInstance& hi,
                                               uint64_t seed) {
  if (hi.packing_set.empty()) throw BadInput("hard instance needs a nonempty set");
  if (!verify_k_packing(g, hi.packing_set, hi.packing_k)) {
    throw BadInput("hard instance set is not a " + std::to_string(hi.packing_k) +
                   "-packing independent set");
  }
  if (std::find(hi.packing_set.begin(), hi.packing_set.end(), hi.special_arm) ==
      hi.packing_set.end()) {
    throw BadInput("special arm must belong to the packing set");
  }
  if (!(hi.epsilon >= 0.0) || hi.epsilon >= 0.5) {
    throw BadInput("hard instance epsilon must lie in [0, 0.5)");
  }
  return std::make_unique<HardEnv>(g.vertex_count(), hi, seed);
}

std::unique_ptr<Environment> const_env(std::vector<double> losses) {
  return std::make_unique<ConstEnv>(std::move(losses));
}

std::unique_ptr<Environment> bernoulli_env(std::vector<double> means, uint64_t seed) {
  return std::make_unique<BernoulliEnv>(std::move(means), seed);
}

std::unique_ptr<Environment> file_env(const std::string& path, int num_arms) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open loss file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw BadInput("loss file line " + std::to_string(line_no) + ": bad value '" + cell + "'");
      }
    }
    if (static_cast<int>(row.size()) != num_arms) {
      throw BadInput("loss file line " + std::to_string(line_no) + ": expected " +
                     std::to_string(num_arms) + " columns");
    }
    for (double v : row) {
      if (!(v >= 0.0) || !(v <= 1.0)) {
        throw BadInput("loss file line " + std::to_string(line_no) + ": loss outside [0, 1]");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw BadInput("loss file '" + path + "' has no rounds");
  return std::make_unique<FileEnv>(std::move(rows), path);
}

std::unique_ptr<Environment> make_environment(const std::string& spec, const DirectedGraph& g,
                                              int64_t horizon, uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const int n = g.vertex_count();

  if (kind == "const") return const_env(broadcast(parse_values(rest), n, "const"));
  if (kind == "bernoulli") return bernoulli_env(broadcast(parse_values(rest), n, "bernoulli"), seed);
  if (kind == "file") return file_env(rest, n);
  if (kind == "hard") {
    HardInstance hi;
    std::string eps_text;
    std::stringstream ss(rest);
    std::string field;
    while (std::getline(ss, field, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw BadInput("hard spec field '" + field + "' needs key=value");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "S") {
        for (double v : parse_values(value)) hi.packing_set.push_back(static_cast<int>(v));
      } else if (key == "j") {
        hi.special_arm = std::stoi(value);
      } else if (key == "eps") {
        eps_text = value;
      } else if (key == "k") {
        hi.packing_k = std::stoi(value);
      } else {
        throw BadInput("unknown hard spec key '" + key + "'");
      }
    }
    if (hi.packing_set.empty()) throw BadInput("hard spec needs S=<idx;idx;...>");
    if (eps_text.empty()) throw BadInput("hard spec needs eps=<float|pack|log>");
    const int size = static_cast<int>(hi.packing_set.size());
    if (eps_text == "pack") {
      hi.epsilon = hard_epsilon_pack(size, hi.packing_k, horizon);
    } else if (eps_text == "log") {
      hi.epsilon = hard_epsilon_log(size, horizon);
    } else {
      try {
        hi.epsilon = std::stod(eps_text);
      } catch (const std::exception&) {
        throw BadInput("bad eps value '" + eps_text + "'");
      }
    }
    if (hi.epsilon >= 0.5) {
      throw BadInput("hard instance epsilon " + std::to_string(hi.epsilon) +
                     " out of range; the horizon is too short for this schedule");
    }
    return hard_instance_env(g, hi, seed);
  }
  throw BadInput("unknown environment kind '" + kind +
                 "'; known kinds: hard, bernoulli, const, file");
}

std::vector<std::vector<double>> bai_instances(int n, double eps, BaiFamily family) {
  if (n < 1) throw BadInput("need at least one arm");
  if (!(eps > 0.0) || eps > 0.5) throw BadInput("epsilon must lie in (0, 0.5]");
  std::vector<std::vector<double>> out;
  if (family == BaiFamily::P) {
    for (int j = 0; j < n; ++j) {
      std::vector<double> means(n, 0.5);
      means[j] = 0.5 - eps;
      out.push_back(std::move(means));
    }
  } else {
    out.emplace_back(n + 1, 0.5);
    out[0][0] = 0.5 - eps;
    for (int j = 1; j <= n; ++j) {
      std::vector<double> means(n + 1, 0.5);
      means[0] = 0.5 - eps / 2.0;
      means[j] = 0.5 - eps;
      out.push_back(std::move(means));
    }
  }
  return out;
}

int uniform_pull_bai(std::span<const double> means, int64_t rounds, Rng& rng) {
  if (means.empty()) throw BadInput("need at least one arm");
  if (rounds < 1) throw BadInput("need at least one round");
  std::vector<int64_t> total(means.size(), 0);
  for (int64_t t = 0; t < rounds; ++t) {
    for (size_t i = 0; i < means.size(); ++i) total[i] += rng.bernoulli(means[i]) ? 1 : 0;
  }
  size_t best = 0;
  for (size_t i = 1; i < means.size(); ++i) {
    if (total[i] < total[best]) best = i;
  }
  return static_cast<int>(best);
}

}  // namespace gb
