#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "heeg/heegner/heegner.hpp"
#include "heeg/qexp/qexp.hpp"

namespace heeg {

// Environment variable naming the cache directory. Unset or empty disables caching.
inline constexpr const char* kCacheEnv = "HEEG_CACHE_DIR";

std::string sha256_hex(const std::string& bytes);

// On-disk results keyed by curve, dK, operation and parameters. Every entry
// carries a digest of its key and payload and is re-verified on load; entries
// that fail are ignored and overwritten. Writes go through a temporary file
// and a rename, so concurrent writers of the same key are harmless.
class ResultCache {
 public:
  explicit ResultCache(std::string dir);
  static std::optional<ResultCache> from_env();

  const std::string& dir() const { return dir_; }

  std::optional<HeegnerPointResult> load_point(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg) const;
  void store_point(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg, const HeegnerPointResult& r) const;

  // a_1..a_B of E, accepted when at least B long; spot-checked against a_ell.
  std::shared_ptr<const EigenformCoeffs> load_alist(const WeierstrassCurve& E, std::size_t B) const;
  void store_alist(const WeierstrassCurve& E, const EigenformCoeffs& f) const;

 private:
  std::string dir_;
  std::string path_for(const std::string& key, const char* ext) const;
};

// CurveCoeffSource backed by the a-list cache; tables longer than
// kMaxCachedTerms are kept in memory only.
class CachedCoeffSource : public CoeffSource {
 public:
  static constexpr std::size_t kMaxCachedTerms = 20'000'000;
  CachedCoeffSource(WeierstrassCurve E, std::optional<ResultCache> cache);
  std::shared_ptr<const EigenformCoeffs> get(std::size_t B) override;

 private:
  WeierstrassCurve E_;
  std::optional<ResultCache> cache_;
  std::mutex mu_;
  std::shared_ptr<const EigenformCoeffs> best_;
};

// heegner_point through the cache: a stored point is re-verified on the curve
// before use. Ingested points bypass the cache.
HeegnerPointResult cached_heegner_point(const WeierstrassCurve& E, long dK, CoeffSource& coeffs, const HeegnerConfig& cfg,
                                        const std::optional<QuadPoint>& known, const std::optional<ResultCache>& cache);

}  // namespace heeg
