// csimap - CSI map learning and pilot mitigation for indoor massive MIMO
// Copyright (C) 2026 The csimap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace csimap {

// Quantized CSI: index pair into the shadow (Z) and distance (R) codebooks.
struct Qcsi {
    std::uint16_t i = 0;
    std::uint16_t n = 0;

    auto operator<=>(const Qcsi &) const = default;
};

// Two-part codebook. Every pair (i, n) induces the large-scale codeword
// z_i / r_n^gamma; quantization is nearest-neighbour on those codewords in
// the squared-gain (beta) domain.
class Codebook {
public:
    // Throws ConfigError unless both parts are non-empty, strictly positive,
    // strictly ascending and every induced codeword is finite and positive.
    Codebook(std::vector<double> z_values, std::vector<double> r_values, double gamma,
             std::uint32_t version = 1);

    std::size_t z_size() const noexcept { return z_.size(); } // I
    std::size_t r_size() const noexcept { return r_.size(); } // N
    std::span<const double> z_values() const noexcept { return z_; }
    std::span<const double> r_values() const noexcept { return r_; }
    double gamma() const noexcept { return gamma_; }
    std::uint32_t version() const noexcept { return version_; }

    bool valid(Qcsi q) const noexcept { return q.i < z_.size() && q.n < r_.size(); }
    double induced_beta(Qcsi q) const;

    // Nearest codeword to gain^2; ties go to the smaller (i, n).
    Qcsi quantize(double gain) const;

    // "I N gamma version" then I z-values and N r-values, one per line, %.17g.
    void write(std::ostream &out) const;
    static Codebook read(std::istream &in, const std::string &source = "<codebook>");
    void save(const std::string &path) const;
    static Codebook load(const std::string &path);

    bool operator==(const Codebook &other) const
    {
        return z_ == other.z_ && r_ == other.r_ && gamma_ == other.gamma_ &&
               version_ == other.version_;
    }

private:
    struct Entry {
        double beta;
        Qcsi q;
    };

    std::vector<double> z_;
    std::vector<double> r_;
    double gamma_;
    std::uint32_t version_;
    std::vector<Entry> sorted_; // by (beta, i, n)
};

Qcsi quantize(double gain, const Codebook &codebook);

struct Dequantized {
    double gain; // sqrt(beta)
    double beta; // z_i / r_n^gamma
};

Dequantized dequantize(Qcsi q, const Codebook &codebook);

// Same, but rejects indices that were produced under another codebook version.
Dequantized dequantize(Qcsi q, const Codebook &codebook, std::uint32_t expected_version);

// Mean |gain^2 - nearest codeword| over the samples.
double mean_distortion(std::span<const double> gains, const Codebook &codebook);

struct DesignOptions {
    int max_iters = 100;
    double tol = 1e-9; // stop once the relative distortion improvement drops below this
    std::uint64_t seed = 1;
    std::uint32_t version = 1;
    // Optional seeds (sizes I and N). Without them the distance part is spread by
    // k-means++ over log gain^2 and the shadow part splits each distance level.
    std::vector<double> z_init;
    std::vector<double> r_init;
};

struct DesignResult {
    Codebook codebook;
    std::vector<double> distortion; // [0] is the seeded codebook, then one per iteration
};

// Lloyd design on the I x N product grid with alternating coordinate updates:
// assign samples to the nearest induced codeword, update each z_i as the
// minimiser of its cell's absolute error with R fixed, then each r_n with Z
// fixed. The geometric mean of R is pinned to its seed, which removes the
// z / r^gamma scale degeneracy. Distortion never increases.
//
// Throws ConfigError for an empty training set or I * N > sample count.
DesignResult design_codebook(std::span<const double> training_gains, int z_size, int r_size,
                             double gamma, const DesignOptions &options = {});

} // namespace csimap
