#include "haar/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "haar/error.hpp"

namespace haar::sampling {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t env_thread_cap() {
  if (const char* s = std::getenv("HAARMOMENTS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return 0;
}

// Runs body(shard) for every shard on up to worker_count(shards) threads.
// The first exception in shard order is rethrown.
void run_shards(std::size_t shards, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = worker_count(shards);
  std::vector<std::exception_ptr> errors(shards);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t s = next++; s < shards; s = next++) {
      try {
        body(s);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct BlockPlan {
  std::size_t blocks;
  std::size_t shards;
  std::size_t block_size(std::size_t b, std::size_t total) const {
    return std::min(kBlock, total - b * kBlock);
  }
  std::pair<std::size_t, std::size_t> shard_range(std::size_t s) const {
    const std::size_t per = blocks / shards, extra = blocks % shards;
    const std::size_t lo = s * per + std::min(s, extra);
    return {lo, lo + per + (s < extra ? 1 : 0)};
  }
};

BlockPlan plan(const McOptions& opts) {
  if (opts.samples < 2) throw PreconditionError("Monte Carlo needs at least 2 samples");
  const std::size_t blocks = (opts.samples + kBlock - 1) / kBlock;
  return {blocks, std::clamp<std::size_t>(opts.shards, 1, blocks)};
}

}  // namespace

Rng substream(std::uint64_t seed, std::uint64_t key) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(key + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(key)};
  return Rng(seq);
}

void EnsembleSpec::validate() const {
  if (dim < 1) throw PreconditionError("ensemble dimension must be positive");
  switch (kind) {
    case Ensemble::gue:
      if (!(beta > 0.0)) throw PreconditionError("gue requires beta > 0");
      break;
    case Ensemble::cue_rank1:
      if (!(gamma > 0.0 && gamma < 1.0)) throw PreconditionError("cue_rank1 requires gamma in (0,1)");
      break;
    case Ensemble::gue_rank1:
      if (!(beta > 0.0 && gamma > 0.0)) throw PreconditionError("gue_rank1 requires beta > 0 and gamma > 0");
      break;
    default:
      break;
  }
}

cplx complex_normal(Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::numbers::sqrt2 / 2.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

ComplexMat ginibre(std::size_t n, Rng& rng) {
  ComplexMat w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = complex_normal(rng);
  return w;
}

ComplexMat haar_unitary(std::size_t n, Rng& rng) {
  auto [q, r] = householder_qr(ginibre(n, rng));
  for (std::size_t j = 0; j < n; ++j) {
    const cplx ph = std::abs(r[j]) > 0.0 ? r[j] / std::abs(r[j]) : cplx(1.0);
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= ph;
  }
  return q;
}

ComplexMat gue(std::size_t n, double beta, Rng& rng) {
  std::normal_distribution<double> diag(0.0, 1.0 / std::sqrt(beta));
  std::normal_distribution<double> off(0.0, 1.0 / std::sqrt(2.0 * beta));
  ComplexMat h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = diag(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = off(rng);
      const double im = off(rng);
      h(i, j) = {re, im};
      h(j, i) = {re, -im};
    }
  }
  return h;
}

ComplexMat sample(const EnsembleSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case Ensemble::haar_unitary:
      return haar_unitary(spec.dim, rng);
    case Ensemble::ginibre:
      return ginibre(spec.dim, rng);
    case Ensemble::gue:
      return gue(spec.dim, spec.beta, rng);
    case Ensemble::cue_rank1: {
      ComplexMat u = haar_unitary(spec.dim, rng);
      const double g = std::sqrt(1.0 - spec.gamma);
      for (auto& x : u.row(0)) x *= g;
      return u;
    }
    case Ensemble::gue_rank1: {
      ComplexMat h = gue(spec.dim, spec.beta, rng);
      h(0, 0) += cplx(0.0, spec.gamma);
      return h;
    }
  }
  throw Error("unknown ensemble");
}

void Accumulator::add(cplx x) {
  ++n_;
  const cplx d = x - mean_;
  mean_ += d / double(n_);
  const cplx d2 = x - mean_;
  m2_re_ += d.real() * d2.real();
  m2_im_ += d.imag() * d2.imag();
}

void Accumulator::merge(const Accumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = double(n_), nb = double(o.n_), nt = na + nb;
  const cplx d = o.mean_ - mean_;
  mean_ += d * (nb / nt);
  m2_re_ += o.m2_re_ + d.real() * d.real() * na * nb / nt;
  m2_im_ += o.m2_im_ + d.imag() * d.imag() * na * nb / nt;
  n_ += o.n_;
}

McEstimate McEstimate::from(const Accumulator& acc, std::uint64_t seed, std::size_t shards) {
  McEstimate e;
  e.mean = acc.mean();
  e.samples = acc.count();
  e.stderr_ = std::sqrt((acc.var_re() + acc.var_im()) / double(acc.count()));
  e.seed = seed;
  e.shards = shards;
  return e;
}

std::size_t worker_count(std::size_t shards) {
  std::size_t w = std::max<std::size_t>(1, shards);
  const std::size_t hw = std::thread::hardware_concurrency();
  if (hw > 0) w = std::min(w, hw);
  if (const std::size_t cap = env_thread_cap()) w = std::min(w, cap);
  return w;
}

McEstimate mc_run(const Draw& draw, const McOptions& opts) {
  const BlockPlan p = plan(opts);
  std::vector<Accumulator> blocks(p.blocks);
  run_shards(p.shards, [&](std::size_t s) {
    const auto [lo, hi] = p.shard_range(s);
    for (std::size_t b = lo; b < hi; ++b) {
      Rng rng = substream(opts.seed, b);
      const std::size_t len = p.block_size(b, opts.samples);
      for (std::size_t i = 0; i < len; ++i) {
        const cplx v = draw(rng);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw Error("non-finite Monte Carlo sample at index " + std::to_string(b * kBlock + i));
        blocks[b].add(v);
      }
    }
  });
  Accumulator total;
  for (const auto& b : blocks) total.merge(b);
  return McEstimate::from(total, opts.seed, p.shards);
}

McEstimate mc_average(const std::function<cplx(const ComplexMat&)>& f, const EnsembleSpec& spec,
                      const McOptions& opts) {
  spec.validate();
  return mc_run([&](Rng& rng) { return f(sample(spec, rng)); }, opts);
}

McVector mc_run_vec(const VecDraw& draw, std::size_t dim, const McOptions& opts) {
  const BlockPlan p = plan(opts);
  // Real-valued components reuse the complex accumulator with zero imaginary part.
  std::vector<std::vector<Accumulator>> blocks(p.blocks, std::vector<Accumulator>(dim));
  run_shards(p.shards, [&](std::size_t s) {
    const auto [lo, hi] = p.shard_range(s);
    std::vector<double> buf(dim);
    for (std::size_t b = lo; b < hi; ++b) {
      Rng rng = substream(opts.seed, b);
      const std::size_t len = p.block_size(b, opts.samples);
      for (std::size_t i = 0; i < len; ++i) {
        std::fill(buf.begin(), buf.end(), 0.0);
        draw(rng, buf);
        for (std::size_t k = 0; k < dim; ++k) {
          if (!std::isfinite(buf[k]))
            throw Error("non-finite Monte Carlo sample at index " + std::to_string(b * kBlock + i));
          blocks[b][k].add(buf[k]);
        }
      }
    }
  });
  McVector out;
  out.mean.resize(dim);
  out.stderr_.resize(dim);
  out.samples = opts.samples;
  out.seed = opts.seed;
  out.shards = p.shards;
  for (std::size_t k = 0; k < dim; ++k) {
    Accumulator total;
    for (const auto& b : blocks) total.merge(b[k]);
    out.mean[k] = total.mean().real();
    out.stderr_[k] = std::sqrt(total.var_re() / double(total.count()));
  }
  return out;
}

std::size_t Binning::bins() const {
  if (kind == Kind::radial) return edges_r.size() < 2 ? 0 : edges_r.size() - 1;
  if (edges_x.size() < 2 || edges_y.size() < 2) return 0;
  return (edges_x.size() - 1) * (edges_y.size() - 1);
}

namespace {
// Index i with edges[i] <= v < edges[i+1], or npos.
std::size_t find_bin(const std::vector<double>& edges, double v) {
  if (edges.size() < 2 || v < edges.front() || v >= edges.back()) return std::size_t(-1);
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}
}  // namespace

std::size_t Binning::locate(cplx z) const {
  if (kind == Kind::radial) {
    const std::size_t i = find_bin(edges_r, std::abs(z));
    return i == std::size_t(-1) ? bins() : i;
  }
  const std::size_t ix = find_bin(edges_x, z.real());
  const std::size_t iy = find_bin(edges_y, z.imag());
  if (ix == std::size_t(-1) || iy == std::size_t(-1)) return bins();
  return ix * (edges_y.size() - 1) + iy;
}

double Binning::area(std::size_t bin) const {
  if (kind == Kind::radial)
    return std::numbers::pi * (edges_r[bin + 1] * edges_r[bin + 1] - edges_r[bin] * edges_r[bin]);
  const std::size_t ny = edges_y.size() - 1;
  const std::size_t ix = bin / ny, iy = bin % ny;
  return (edges_x[ix + 1] - edges_x[ix]) * (edges_y[iy + 1] - edges_y[iy]);
}

Histogram eig_histogram(const EnsembleSpec& spec, const Binning& binning, const McOptions& opts) {
  spec.validate();
  const std::size_t nb = binning.bins();
  if (nb == 0) throw PreconditionError("histogram needs at least one bin");
  // Components: counts per bin, count outside, failure flag.
  auto draw = [&](Rng& rng, std::span<double> out) {
    const ComplexMat w = sample(spec, rng);
    std::vector<cplx> ev;
    try {
      ev = eigvals(w);
    } catch (const ConvergenceError&) {
      out[nb + 1] = 1.0;
      return;
    }
    for (const cplx& z : ev) out[binning.locate(z)] += 1.0;
  };
  const McVector v = mc_run_vec(draw, nb + 2, opts);
  Histogram h;
  h.binning = binning;
  h.density.resize(nb);
  h.stderr_.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const double a = binning.area(b);
    h.density[b] = v.mean[b] / a;
    h.stderr_[b] = v.stderr_[b] / a;
  }
  h.outside = v.mean[nb] / double(spec.dim);
  h.samples = opts.samples;
  h.failed = static_cast<std::size_t>(std::llround(v.mean[nb + 1] * double(opts.samples)));
  h.seed = opts.seed;
  return h;
}

}  // namespace haar::sampling
