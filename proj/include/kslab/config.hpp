#ifndef KSLAB_CONFIG_HPP
#define KSLAB_CONFIG_HPP

#include "kslab/evolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kslab {

/** Flat key=value file with # comments; one scenario per file. */
struct KeyValueFile {
    std::map<std::string, std::string> values;
    std::map<std::string, int> line_of;
    mutable std::map<std::string, bool> consumed;

    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_text(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;

    /** Keys never read by any getter; catches typos. */
    std::vector<std::string> unused_keys() const;

    void set(const std::string& key, const std::string& value);

private:
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
    std::string origin_;
};

/** SimConfig from config keys (documented in the README). */
SimConfig build_sim_config(const KeyValueFile& kv);

/** Serializes a SimConfig back to config-file text (the manifest echo). */
std::string config_echo(const SimConfig& cfg);

} // namespace kslab

#endif
