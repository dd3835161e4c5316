#pragma once

// Append-only, line-delimited cache of singular-vector bases keyed by
// (c, h, level). One JSON object per line.

#include "nsrep/exactnum.hpp"
#include "nsrep/nsalgebra.hpp"

#include <json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nsrep {

inline constexpr const char* kEngineVersion = "nsrep-1.0";

/// Serialises one cache record. Basis vectors are lists of
/// [monomial-word, coefficient] pairs in monomial order.
inline std::string singular_record(const Rational& c, const Rational& h, HalfInt level,
                                   const std::vector<EnvElement>& basis) {
  nlohmann::ordered_json j;
  j["c"] = c.to_string();
  j["h"] = h.to_string();
  j["level"] = level.to_string();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : basis) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [m, coef] : v.terms()) terms.push_back({m.to_string(), coef.to_string()});
    arr.push_back(std::move(terms));
  }
  j["basis"] = std::move(arr);
  j["engine"] = kEngineVersion;
  return j.dump();
}

class SingularCache {
public:
  SingularCache() = default;
  explicit SingularCache(std::string path) : path_(std::move(path)) { load(); }

  bool enabled() const { return !path_.empty(); }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

  std::optional<std::vector<EnvElement>> lookup(const Rational& c, const Rational& h, HalfInt level) {
    auto it = records_.find(key(c, h, level));
    if (it == records_.end()) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return decode(it->second);
  }

  // Raw stored line, for coherence checks.
  std::optional<std::string> raw(const Rational& c, const Rational& h, HalfInt level) const {
    auto it = records_.find(key(c, h, level));
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  void store(const Rational& c, const Rational& h, HalfInt level, const std::vector<EnvElement>& basis) {
    std::string line = singular_record(c, h, level, basis);
    auto k = key(c, h, level);
    if (records_.count(k)) return;
    records_.emplace(k, line);
    if (path_.empty()) return;
    int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) throw Error("cannot open cache file " + path_);
    ::flock(fd, LOCK_EX);
    line += '\n';
    std::size_t done = 0;
    while (done < line.size()) {
      ssize_t n = ::write(fd, line.data() + done, line.size() - done);
      if (n <= 0) break;
      done += static_cast<std::size_t>(n);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
  }

private:
  using Key = std::tuple<std::string, std::string, std::string>;
  static Key key(const Rational& c, const Rational& h, HalfInt level) {
    return {c.to_string(), h.to_string(), level.to_string()};
  }

  void load() {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("engine") || j["engine"] != kEngineVersion) continue;
      Key k{j["c"].get<std::string>(), j["h"].get<std::string>(), j["level"].get<std::string>()};
      records_.try_emplace(k, line);
    }
  }

  static std::vector<EnvElement> decode(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    std::vector<EnvElement> out;
    for (const auto& vec : j["basis"]) {
      EnvElement e;
      for (const auto& term : vec)
        e.add(PbwMonomial::parse(term[0].get<std::string>()), Rational::parse(term[1].get<std::string>()));
      out.push_back(std::move(e));
    }
    return out;
  }

  std::string path_;
  std::map<Key, std::string> records_;
  std::size_t hits_ = 0, misses_ = 0;
};

} // namespace nsrep
