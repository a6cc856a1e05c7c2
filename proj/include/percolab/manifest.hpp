#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace percolab {

// Key/value manifest pinning every derived constant of a run (seeds, the
// alpha4 estimate, the speed factor, calibrated constants). Written as
// sorted "key = value" lines so reruns diff cleanly.
class Manifest {
  public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, std::uint64_t value);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;

    std::string to_text() const;
    static Manifest from_text(const std::string& text);

    void save(const std::string& path) const;
    static Manifest load(const std::string& path);

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

// Deterministic shortest-round-trip formatting used for every number that
// lands in an output file.
std::string format_double(double v);

} // namespace percolab
