#pragma once

#include <optional>
#include <string>

#include "hetnet/model.hpp"
#include "hetnet/sweep.hpp"

namespace hetnet {

// Parse failure with the offending line and key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + ", key '" +
                             key + "': " + what),
          line_(line), key_(std::move(key)) {}
    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct Config {
    NetworkParams params;
    std::optional<SweepSpec> sweep;  // present when an axis was configured
};

// Line-oriented `key = value` text; '#' starts a comment; unspecified keys
// keep the defaults of default_params(). dB-quoted keys are converted on
// load, per-km2 densities converted to per-m2.
Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

// The same defaults rendered as config text (documentation/validate output).
std::string config_reference();

}  // namespace hetnet
