#include "heeg/harness/cache.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "heeg/ellcurve/count.hpp"
#include "heeg/errors.hpp"

namespace heeg {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

std::string point_key(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg) {
  std::ostringstream os;
  os << "heegner|" << E.label() << "|" << E.ainvs_string() << "|" << dK << "|" << cfg.startBits << "|" << cfg.maxBits << "|"
     << cfg.coeffCap << "|";
  for (long m : cfg.multipliers) os << m << ",";
  os << "|" << cfg.maxDivisor;
  return os.str();
}

std::string alist_key(const WeierstrassCurve& E) { return "alist|" + E.ainvs_string(); }

void write_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp" + std::to_string(std::rand());
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

std::optional<std::string> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "<digest>\n<key>\n<payload>", digest over key + payload.
std::string seal(const std::string& key, const std::string& payload) {
  return sha256_hex(key + "\n" + payload) + "\n" + key + "\n" + payload;
}

std::optional<std::string> unseal(const std::string& key, const std::string& blob) {
  auto a = blob.find('\n');
  if (a == std::string::npos) return std::nullopt;
  auto b = blob.find('\n', a + 1);
  if (b == std::string::npos) return std::nullopt;
  if (blob.compare(a + 1, b - a - 1, key) != 0) return std::nullopt;
  std::string payload = blob.substr(b + 1);
  if (sha256_hex(key + "\n" + payload) != blob.substr(0, a)) return std::nullopt;
  return payload;
}

}  // namespace

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::optional<ResultCache> ResultCache::from_env() {
  const char* d = std::getenv(kCacheEnv);
  if (!d || !*d) return std::nullopt;
  return ResultCache(d);
}

std::string ResultCache::path_for(const std::string& key, const char* ext) const {
  return dir_ + "/" + sha256_hex(key).substr(0, 24) + ext;
}

std::optional<HeegnerPointResult> ResultCache::load_point(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg) const {
  const std::string key = point_key(E, dK, cfg);
  auto blob = read_all(path_for(key, ".pt"));
  if (!blob) return std::nullopt;
  auto payload = unseal(key, *blob);
  if (!payload) return std::nullopt;
  std::istringstream in(*payload);
  HeegnerPointResult r;
  int inf = 0, certified = 0, torsion = 0;
  std::string xu, xv, yu, yv, hb;
  in >> inf >> xu >> xv >> yu >> yv >> r.complexPrecisionUsed >> certified >> hb >> r.multiplier >> torsion >> r.terms >> r.divisor;
  if (!in) return std::nullopt;
  try {
    r.point = inf ? QuadPoint::at_infinity()
                  : QuadPoint::affine(QuadElem(dK, parse_rational(xu), parse_rational(xv)),
                                      QuadElem(dK, parse_rational(yu), parse_rational(yv)));
    r.heightBound = Integer(hb);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  r.certified = certified != 0;
  r.torsionLimit = torsion != 0;
  if (!on_curve(Model<QuadElem>(E, {dK}), r.point)) return std::nullopt;
  return r;
}

void ResultCache::store_point(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg, const HeegnerPointResult& r) const {
  if (r.provenance != PointProvenance::Computed) return;
  const std::string key = point_key(E, dK, cfg);
  std::ostringstream os;
  const QuadPoint& P = r.point;
  auto q = [](const Rational& x) { return x.get_str(); };
  if (P.infinity) os << "1 0 0 0 0";
  else os << "0 " << q(P.x.u()) << " " << q(P.x.v()) << " " << q(P.y.u()) << " " << q(P.y.v());
  os << " " << r.complexPrecisionUsed << " " << (r.certified ? 1 : 0) << " " << r.heightBound.get_str() << " " << r.multiplier << " "
     << (r.torsionLimit ? 1 : 0) << " " << r.terms << " " << r.divisor << "\n";
  write_atomic(path_for(key, ".pt"), seal(key, os.str()));
}

std::shared_ptr<const EigenformCoeffs> ResultCache::load_alist(const WeierstrassCurve& E, std::size_t B) const {
  const std::string key = alist_key(E);
  auto blob = read_all(path_for(key, ".alist"));
  if (!blob) return nullptr;
  auto payload = unseal(key, *blob);
  if (!payload || payload->size() % sizeof(std::int32_t) != 0) return nullptr;
  auto f = std::make_shared<EigenformCoeffs>();
  f->N = E.conductor();
  f->label = E.label();
  f->a.resize(payload->size() / sizeof(std::int32_t));
  std::memcpy(f->a.data(), payload->data(), payload->size());
  if (f->length() < B) return nullptr;
  // spot checks beyond the digest
  for (long p : {2L, 3L, 5L, 7L, 101L, 997L}) {
    if (static_cast<std::size_t>(p) <= f->length() && (*f)[p] != a_ell(E, p)) return nullptr;
  }
  return f;
}

void ResultCache::store_alist(const WeierstrassCurve& E, const EigenformCoeffs& f) const {
  const std::string key = alist_key(E);
  std::string payload(reinterpret_cast<const char*>(f.a.data()), f.a.size() * sizeof(std::int32_t));
  write_atomic(path_for(key, ".alist"), seal(key, payload));
}

CachedCoeffSource::CachedCoeffSource(WeierstrassCurve E, std::optional<ResultCache> cache)
    : E_(std::move(E)), cache_(std::move(cache)) {}

std::shared_ptr<const EigenformCoeffs> CachedCoeffSource::get(std::size_t B) {
  std::lock_guard<std::mutex> lock(mu_);
  if (best_ && best_->length() >= B) return best_;
  if (cache_ && B <= kMaxCachedTerms) {
    if (auto f = cache_->load_alist(E_, B)) return best_ = f;
  }
  best_ = std::make_shared<const EigenformCoeffs>(best_ ? anlist_extend(E_, *best_, B) : anlist(E_, B));
  if (cache_ && B <= kMaxCachedTerms) cache_->store_alist(E_, *best_);
  return best_;
}

HeegnerPointResult cached_heegner_point(const WeierstrassCurve& E, long dK, CoeffSource& coeffs, const HeegnerConfig& cfg,
                                        const std::optional<QuadPoint>& known, const std::optional<ResultCache>& cache) {
  if (known || !cache) return heegner_point(E, dK, coeffs, cfg, known);
  if (auto r = cache->load_point(E, dK, cfg)) return *r;
  HeegnerPointResult r = heegner_point(E, dK, coeffs, cfg);
  cache->store_point(E, dK, cfg, r);
  return r;
}

}  // namespace heeg
