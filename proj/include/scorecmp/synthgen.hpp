#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>

#include "scorecmp/matrix.hpp"

// Synthetic stand-in for large populations of trained models. Each cell
// draws a latent whole-population score and realizes finite dev/test
// measurements of it, so the score decomposition
//   observed = latent + measurement noise
// holds by construction and twin approaches can be generated from one
// configuration.

namespace scorecmp {

enum class InstanceModel { bernoulli_accuracy, gaussian_additive };

struct SyntheticConfig {
    Score true_mean = 97.5;   // mean of the latent score distribution
    Score true_sd = 0.2;      // between-run spread of the latent score
    std::int64_t dev_size = 40000;
    std::int64_t test_size = 5500;
    std::int64_t rows = 500;
    std::int64_t cols = 50;
    std::uint64_t seed = 1;
    InstanceModel instance_model = InstanceModel::bernoulli_accuracy;

    void validate() const;
};

// The calibrated default above targets the scale of a typical NER twin
// comparison: the single-run |test difference| has a 95th percentile of
// about 0.8 percentage points (measured 0.80 at seed 7, 500x50 grid).
SyntheticConfig default_synthetic_config();

// Plain-text key=value config, '#' comments. Unknown keys are errors.
SyntheticConfig parse_synthetic_config(std::istream& in);
std::string serialize_synthetic_config(const SyntheticConfig& cfg);

struct SyntheticPopulation {
    ScoreMatrix a;
    ScoreMatrix b;
    std::vector<double> true_a;  // row-major latent scores
    std::vector<double> true_b;
};

// Generates the twin matrices A and A~ from one generator. Deterministic
// given the config; row r of matrix m uses the derived stream
// derive_stream(seed, m * rows + r), so generation order is irrelevant.
//
// bernoulli_accuracy draws per-instance 0/1 outcomes with success chance
// latent/100 and stores the test outcomes as packed per-instance stats.
// gaussian_additive adds normal noise with the binomial-matched sd
// 100*sqrt(p(1-p)/size) at p = true_mean/100 and stores no instance stats.
SyntheticPopulation generate_population(const SyntheticConfig& cfg);

// Measurement-noise components of one run given its latent score:
// (dev - true, test - true).
std::pair<Score, Score> decompose(const RunRecord& record, Score true_score);

}  // namespace scorecmp
