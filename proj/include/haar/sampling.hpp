#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "haar/matrix.hpp"

namespace haar::sampling {

using Rng = std::mt19937_64;

/// Generator keyed by (seed, key). Keys are hashed with splitmix64 and fed
/// through seed_seq, so neighbouring keys give unrelated streams.
Rng substream(std::uint64_t seed, std::uint64_t key);

enum class Ensemble { haar_unitary, ginibre, gue, cue_rank1, gue_rank1 };

struct EnsembleSpec {
  Ensemble kind = Ensemble::haar_unitary;
  std::size_t dim = 1;
  double beta = 1.0;
  double gamma = 0.0;

  static EnsembleSpec haar(std::size_t n) { return {Ensemble::haar_unitary, n}; }
  static EnsembleSpec ginibre(std::size_t n) { return {Ensemble::ginibre, n}; }
  static EnsembleSpec gue(std::size_t n, double beta) { return {Ensemble::gue, n, beta}; }
  static EnsembleSpec cue_rank1(std::size_t n, double gamma) { return {Ensemble::cue_rank1, n, 1.0, gamma}; }
  static EnsembleSpec gue_rank1(std::size_t n, double beta, double gamma) {
    return {Ensemble::gue_rank1, n, beta, gamma};
  }

  /// Throws PreconditionError on an invalid parameter set.
  void validate() const;
};

cplx complex_normal(Rng& rng);

ComplexMat haar_unitary(std::size_t n, Rng& rng);
/// i.i.d. entries, real and imaginary parts N(0, 1/2).
ComplexMat ginibre(std::size_t n, Rng& rng);
/// Density proportional to exp(-(beta/2) tr H^2).
ComplexMat gue(std::size_t n, double beta, Rng& rng);

ComplexMat sample(const EnsembleSpec& spec, Rng& rng);

/// Running mean and centred second moments of a complex quantity.
class Accumulator {
 public:
  void add(cplx x);
  /// Pooled combination; merging is exact in the sense of Chan et al.
  void merge(const Accumulator& o);

  std::size_t count() const { return n_; }
  cplx mean() const { return mean_; }
  /// Sample variance of real and imaginary parts.
  double var_re() const { return n_ > 1 ? m2_re_ / double(n_ - 1) : 0.0; }
  double var_im() const { return n_ > 1 ? m2_im_ / double(n_ - 1) : 0.0; }

 private:
  std::size_t n_ = 0;
  cplx mean_ = 0.0;
  double m2_re_ = 0.0;
  double m2_im_ = 0.0;
};

struct McEstimate {
  cplx mean = 0.0;
  /// Standard error of the mean, sqrt((var_re + var_im)/N).
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t shards = 1;

  static McEstimate from(const Accumulator& acc, std::uint64_t seed, std::size_t shards);
};

struct McOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
};

/// Samples per RNG block. Every block has its own substream and the block
/// accumulators are folded in block order, so the result does not depend on
/// the shard count or on thread scheduling.
inline constexpr std::size_t kBlock = 1024;

/// Worker threads actually used for a given shard count
/// (capped by HAARMOMENTS_THREADS and the hardware).
std::size_t worker_count(std::size_t shards);

using Draw = std::function<cplx(Rng&)>;

/// Mean of draw(rng) over opts.samples draws. Throws haar::Error naming the
/// sample index if a draw is not finite.
McEstimate mc_run(const Draw& draw, const McOptions& opts);

McEstimate mc_average(const std::function<cplx(const ComplexMat&)>& f, const EnsembleSpec& spec,
                      const McOptions& opts);

/// Vector-valued variant: draw writes dim real values per sample.
struct McVector {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
};

using VecDraw = std::function<void(Rng&, std::span<double>)>;
McVector mc_run_vec(const VecDraw& draw, std::size_t dim, const McOptions& opts);

/// Planar or radial bins for eigenvalue histograms.
struct Binning {
  enum class Kind { planar, radial } kind = Kind::radial;
  /// radial: edges in |z|; planar: edges along x and y.
  std::vector<double> edges_r;
  std::vector<double> edges_x;
  std::vector<double> edges_y;

  static Binning radial(std::vector<double> edges) { return {Kind::radial, std::move(edges), {}, {}}; }
  static Binning planar(std::vector<double> ex, std::vector<double> ey) {
    return {Kind::planar, {}, std::move(ex), std::move(ey)};
  }
  std::size_t bins() const;
  /// Bin index or bins() when z is outside every bin.
  std::size_t locate(cplx z) const;
  double area(std::size_t bin) const;
};

/// Eigenvalue density table. density integrates to n over the plane when the
/// bins cover the support; stderr comes from the per-matrix variance of the
/// bin counts.
struct Histogram {
  Binning binning;
  std::vector<double> density;
  std::vector<double> stderr_;
  /// Fraction of eigenvalues falling outside every bin.
  double outside = 0.0;
  std::size_t samples = 0;
  std::size_t failed = 0;
  std::uint64_t seed = 0;
};

Histogram eig_histogram(const EnsembleSpec& spec, const Binning& binning, const McOptions& opts);

}  // namespace haar::sampling
