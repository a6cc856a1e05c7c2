#include "percolab/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace percolab {

std::string format_double(double v) {
    char buf[40];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

void Manifest::set(const std::string& key, const std::string& value) {
    kv_[key] = value;
}
void Manifest::set(const std::string& key, double value) {
    kv_[key] = format_double(value);
}
void Manifest::set(const std::string& key, std::int64_t value) {
    kv_[key] = std::to_string(value);
}
void Manifest::set(const std::string& key, std::uint64_t value) {
    kv_[key] = std::to_string(value);
}

const std::string& Manifest::get(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::out_of_range("manifest: missing key " + key);
    return it->second;
}

double Manifest::get_double(const std::string& key) const {
    return std::stod(get(key));
}

std::string Manifest::to_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : kv_) out << k << " = " << v << "\n";
    return out.str();
}

Manifest Manifest::from_text(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto pos = line.find(" = ");
        if (pos == std::string::npos)
            throw std::runtime_error("manifest: bad line: " + line);
        m.kv_[line.substr(0, pos)] = line.substr(pos + 3);
    }
    return m;
}

void Manifest::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("manifest: cannot write " + path);
    out << to_text();
}

Manifest Manifest::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("manifest: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

} // namespace percolab
