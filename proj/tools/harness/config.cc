// Copyright 2026 The DPPG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness/config.h"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace dppg::harness {

namespace {

// One config key bound to a field of ExperimentConfig.
struct Field {
  std::string section;
  std::string key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<absl::Status(ExperimentConfig&, const std::string&)> set;
  // Written only when this returns true.
  std::function<bool(const ExperimentConfig&)> present = [](const ExperimentConfig&) {
    return true;
  };
};

std::string FormatDouble(double v) { return absl::StrFormat("%.17g", v); }

absl::Status BadValue(const std::string& value, const std::string& expected) {
  return absl::InvalidArgumentError(absl::StrCat("'", value, "' is not ", expected));
}

absl::Status ParseDouble(const std::string& text, double& out) {
  if (!absl::SimpleAtod(text, &out)) return BadValue(text, "a number");
  return absl::OkStatus();
}

template <typename Int>
absl::Status ParseInt(const std::string& text, Int& out) {
  if (!absl::SimpleAtoi(text, &out)) return BadValue(text, "an integer");
  return absl::OkStatus();
}

absl::Status ParseBool(const std::string& text, bool& out) {
  if (text == "true") {
    out = true;
  } else if (text == "false") {
    out = false;
  } else {
    return BadValue(text, "true or false");
  }
  return absl::OkStatus();
}

template <typename Ref>
Field DoubleField(std::string section, std::string key, Ref ref) {
  return {section, key,
          [ref](const ExperimentConfig& c) {
            return FormatDouble(ref(const_cast<ExperimentConfig&>(c)));
          },
          [ref](ExperimentConfig& c, const std::string& v) { return ParseDouble(v, ref(c)); }};
}

template <typename Ref>
Field IntField(std::string section, std::string key, Ref ref) {
  return {section, key,
          [ref](const ExperimentConfig& c) {
            return absl::StrCat(ref(const_cast<ExperimentConfig&>(c)));
          },
          [ref](ExperimentConfig& c, const std::string& v) { return ParseInt(v, ref(c)); }};
}

template <typename Ref>
Field BoolField(std::string section, std::string key, Ref ref) {
  return {section, key,
          [ref](const ExperimentConfig& c) {
            return std::string(ref(const_cast<ExperimentConfig&>(c)) ? "true" : "false");
          },
          [ref](ExperimentConfig& c, const std::string& v) { return ParseBool(v, ref(c)); }};
}

template <typename Ref>
Field StringField(std::string section, std::string key, Ref ref) {
  return {section, key,
          [ref](const ExperimentConfig& c) { return ref(const_cast<ExperimentConfig&>(c)); },
          [ref](ExperimentConfig& c, const std::string& v) {
            ref(c) = v;
            return absl::OkStatus();
          }};
}

const std::vector<Field>& Fields() {
  using C = ExperimentConfig;
  static const std::vector<Field>* fields = new std::vector<Field>{
      StringField("run", "env", [](C& c) -> std::string& { return c.env; }),
      IntField("run", "seed", [](C& c) -> uint64_t& { return c.seed; }),
      IntField("run", "n_seeds", [](C& c) -> int& { return c.n_seeds; }),
      StringField("run", "output_dir", [](C& c) -> std::string& { return c.output_dir; }),
      IntField("run", "total_env_steps",
               [](C& c) -> int64_t& { return c.train.total_env_steps; }),
      IntField("run", "eval_episodes", [](C& c) -> int& { return c.train.eval_episodes; }),
      IntField("run", "eval_every_steps",
               [](C& c) -> int64_t& { return c.train.eval_every_steps; }),

      DoubleField("privacy", "z", [](C& c) -> double& { return c.train.privacy.z; }),
      DoubleField("privacy", "delta", [](C& c) -> double& { return c.train.privacy.delta; }),
      DoubleField("privacy", "clip_norm",
                  [](C& c) -> double& { return c.train.privacy.clip_norm; }),
      IntField("privacy", "users_per_update",
               [](C& c) -> int& { return c.train.privacy.users_per_update; }),

      IntField("policy", "hidden", [](C& c) -> int& { return c.train.hidden; }),

      IntField("ppo", "steps_per_user", [](C& c) -> int& { return c.train.steps_per_user; }),
      IntField("ppo", "local_epochs", [](C& c) -> int& { return c.train.local.local_epochs; }),
      IntField("ppo", "num_minibatches", [](C& c) -> int& { return c.num_minibatches; }),
      DoubleField("ppo", "local_lr", [](C& c) -> double& { return c.train.local.local_lr; }),
      DoubleField("ppo", "entropy_coef",
                  [](C& c) -> double& { return c.train.local.entropy_coef; }),
      Field{"ppo", "advantage_normalization",
            [](const C& c) {
              return std::string(AdvantageNormalizationName(c.train.local.normalization));
            },
            [](C& c, const std::string& v) -> absl::Status {
              absl::StatusOr<AdvantageNormalization> n = ParseAdvantageNormalization(v);
              if (!n.ok()) return BadValue(v, "one of none, trajectory, minibatch");
              c.train.local.normalization = *n;
              return absl::OkStatus();
            }},
      DoubleField("ppo", "gamma", [](C& c) -> double& { return c.train.gamma; }),
      DoubleField("ppo", "gae_lambda", [](C& c) -> double& { return c.train.gae_lambda; }),
      DoubleField("ppo", "global_lr", [](C& c) -> double& { return c.train.global_lr; }),
      BoolField("ppo", "persistent_envs",
                [](C& c) -> bool& { return c.train.persistent_envs; }),
      BoolField("ppo", "substitute_moments",
                [](C& c) -> bool& { return c.train.substitute_moments; }),

      DoubleField("critic", "lr", [](C& c) -> double& { return c.train.critic.lr; }),
      IntField("critic", "epochs", [](C& c) -> int& { return c.train.critic.epochs; }),
      IntField("critic", "minibatches",
               [](C& c) -> int& { return c.train.critic.minibatches; }),
      IntField("critic", "hidden", [](C& c) -> int& { return c.train.critic.hidden; }),

      Field{"riverswim", "variant",
            [](const C& c) { return std::string(VariantName(c.riverswim.variant)); },
            [](C& c, const std::string& v) -> absl::Status {
              absl::StatusOr<RiverswimVariant> parsed = ParseVariant(v);
              if (!parsed.ok()) return BadValue(v, "l2 or kl");
              c.riverswim.variant = *parsed;
              return absl::OkStatus();
            }},
      Field{"riverswim", "features",
            [](const C& c) {
              return std::string(c.riverswim.features == ArchKind::kLogLinearConcat
                                     ? "concat"
                                     : "product");
            },
            [](C& c, const std::string& v) -> absl::Status {
              if (v == "product") {
                c.riverswim.features = ArchKind::kLogLinearProduct;
              } else if (v == "concat") {
                c.riverswim.features = ArchKind::kLogLinearConcat;
              } else {
                return BadValue(v, "product or concat");
              }
              return absl::OkStatus();
            }},
      IntField("riverswim", "episodes", [](C& c) -> int& { return c.riverswim.episodes; }),
      DoubleField("riverswim", "epsilon", [](C& c) -> double& { return c.riverswim.epsilon; }),
      Field{"riverswim", "z",
            [](const C& c) { return FormatDouble(c.riverswim.z.value_or(0.0)); },
            [](C& c, const std::string& v) -> absl::Status {
              double z = 0.0;
              if (absl::Status s = ParseDouble(v, z); !s.ok()) return s;
              c.riverswim.z = z;
              return absl::OkStatus();
            },
            [](const C& c) { return c.riverswim.z.has_value(); }},
      DoubleField("riverswim", "alpha", [](C& c) -> double& { return c.riverswim.alpha; }),
      DoubleField("riverswim", "beta", [](C& c) -> double& { return c.riverswim.beta; }),
      DoubleField("riverswim", "lr0", [](C& c) -> double& { return c.riverswim.lr.eta0; }),
      IntField("riverswim", "lr_every", [](C& c) -> int& { return c.riverswim.lr.every; }),
      DoubleField("riverswim", "lr_factor",
                  [](C& c) -> double& { return c.riverswim.lr.factor; }),
      DoubleField("riverswim", "lr_min", [](C& c) -> double& { return c.riverswim.lr.min_lr; }),
      IntField("riverswim", "fisher_episodes",
               [](C& c) -> int& { return c.riverswim.fisher_episodes; }),
      DoubleField("riverswim", "fisher_regularizer",
                  [](C& c) -> double& { return c.riverswim.fisher_regularizer; }),
      IntField("riverswim", "fisher_refresh",
               [](C& c) -> int& { return c.riverswim.fisher_refresh; }),
      DoubleField("riverswim", "gamma", [](C& c) -> double& { return c.riverswim.gamma; }),
      DoubleField("riverswim", "baseline_lr",
                  [](C& c) -> double& { return c.riverswim.baseline_lr; }),
      IntField("riverswim", "n_states", [](C& c) -> int& { return c.riverswim.env.n_states; }),
      IntField("riverswim", "horizon", [](C& c) -> int& { return c.riverswim.env.horizon; }),
      DoubleField("riverswim", "reward_prob",
                  [](C& c) -> double& { return c.riverswim.env.reward_prob; }),
      DoubleField("riverswim", "left_reward",
                  [](C& c) -> double& { return c.riverswim.env.left_reward; }),
      DoubleField("riverswim", "right_reward",
                  [](C& c) -> double& { return c.riverswim.env.right_reward; }),
      DoubleField("riverswim", "right_advance",
                  [](C& c) -> double& { return c.riverswim.env.right_advance; }),
      DoubleField("riverswim", "right_stay",
                  [](C& c) -> double& { return c.riverswim.env.right_stay; }),
      DoubleField("riverswim", "right_retreat",
                  [](C& c) -> double& { return c.riverswim.env.right_retreat; }),
      DoubleField("riverswim", "bank_advance",
                  [](C& c) -> double& { return c.riverswim.env.bank_advance; }),
      DoubleField("riverswim", "bank_stay",
                  [](C& c) -> double& { return c.riverswim.env.bank_stay; }),
      DoubleField("riverswim", "end_stay",
                  [](C& c) -> double& { return c.riverswim.env.end_stay; }),
      DoubleField("riverswim", "end_retreat",
                  [](C& c) -> double& { return c.riverswim.env.end_retreat; }),

      Field{"sweep", "z_grid",
            [](const C& c) {
              return absl::StrJoin(c.z_grid, ",", [](std::string* out, double z) {
                absl::StrAppend(out, FormatDouble(z));
              });
            },
            [](C& c, const std::string& v) -> absl::Status {
              c.z_grid.clear();
              for (absl::string_view item :
                   absl::StrSplit(v, ',', absl::SkipWhitespace())) {
                double z = 0.0;
                if (!absl::SimpleAtod(item, &z)) {
                  return BadValue(v, "a comma-separated list of numbers");
                }
                c.z_grid.push_back(z);
              }
              return absl::OkStatus();
            }},
  };
  return *fields;
}

constexpr absl::string_view kConfigErrorTag = "config error: ";

absl::Status ConfigError(const std::string& message) {
  return absl::InvalidArgumentError(absl::StrCat(kConfigErrorTag, message));
}

}  // namespace

void ExperimentConfig::Finalize() {
  train.env = env;
  train.seed = seed;
  train.local.minibatch_size =
      (train.steps_per_user + std::max(num_minibatches, 1) - 1) / std::max(num_minibatches, 1);
  train.local.clip_norm = train.privacy.clip_norm;
  riverswim.seed = seed;
  riverswim.delta = train.privacy.delta;
}

absl::Status ExperimentConfig::Validate() const {
  if (env.empty()) return ConfigError("missing required key run.env");
  if (n_seeds < 1) return ConfigError(absl::StrCat("run.n_seeds must be >= 1, got ", n_seeds));
  if (num_minibatches < 1 || num_minibatches > train.steps_per_user) {
    return ConfigError(absl::StrCat("ppo.num_minibatches must lie in [1, steps_per_user], got ",
                                    num_minibatches));
  }
  if (z_grid.empty()) return ConfigError("sweep.z_grid must not be empty");
  for (double z : z_grid) {
    if (!(z >= 0.0)) return ConfigError(absl::StrCat("sweep.z_grid entries must be >= 0, got ", z));
  }
  if (env == "riverswim") {
    if (absl::Status s = riverswim.Validate(); !s.ok()) {
      return ConfigError(absl::StrCat("[riverswim] ", s.message()));
    }
  } else if (absl::Status s = train.Validate(); !s.ok()) {
    return ConfigError(std::string(s.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseConfig(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    return ConfigError(absl::StrCat("line ", e.line(), ": ", e.message()));
  }

  std::map<std::string, const Field*> by_path;
  for (const Field& f : Fields()) by_path[absl::StrCat(f.section, ".", f.key)] = &f;

  ExperimentConfig cfg;
  for (const auto& [section, keys] : tree) {
    if (keys.empty()) {
      return ConfigError(absl::StrCat("key '", section, "' must live inside a [section]"));
    }
    for (const auto& [key, value] : keys) {
      const std::string path = absl::StrCat(section, ".", key);
      auto it = by_path.find(path);
      if (it == by_path.end()) return ConfigError(absl::StrCat("unknown key '", path, "'"));
      const std::string text(absl::StripAsciiWhitespace(value.data()));
      if (absl::Status s = it->second->set(cfg, text); !s.ok()) {
        return ConfigError(absl::StrCat(path, ": ", s.message()));
      }
    }
  }
  if (const char* seed = std::getenv("DPPG_SEED"); seed != nullptr) {
    if (!absl::SimpleAtoi(seed, &cfg.seed)) {
      return ConfigError(absl::StrCat("DPPG_SEED='", seed, "' is not an integer"));
    }
  }
  cfg.Finalize();
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  return cfg;
}

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open config file ", path));
  return ParseConfig(in);
}

std::string WriteConfig(const ExperimentConfig& cfg) {
  std::string out;
  std::string section;
  for (const Field& f : Fields()) {
    if (!f.present(cfg)) continue;
    if (f.section != section) {
      absl::StrAppend(&out, out.empty() ? "" : "\n", "[", f.section, "]\n");
      section = f.section;
    }
    absl::StrAppend(&out, f.key, " = ", f.get(cfg), "\n");
  }
  return out;
}

bool IsConfigError(const absl::Status& status) {
  return absl::IsInvalidArgument(status) &&
         absl::StartsWith(status.message(), kConfigErrorTag);
}

}  // namespace dppg::harness
