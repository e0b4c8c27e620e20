#ifndef LRIPCT_CONFIG_HPP
#define LRIPCT_CONFIG_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "core.hpp"

namespace lripct {

// Flat "key = value" config, '#' starts a comment.
class Config {
public:
    Config() = default;

    static Config parse(std::istream& is)
    {
        Config cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r");
                auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::string t = trim(line);
            if (t.empty())
                continue;
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config: missing '=' on line "
                                            + std::to_string(lineno));
            std::string key = trim(t.substr(0, eq));
            std::string val = trim(t.substr(eq + 1));
            if (key.empty())
                throw std::invalid_argument("config: empty key on line " + std::to_string(lineno));
            cfg.kv_[key] = val;
        }
        return cfg;
    }

    static Config load(const std::string& path)
    {
        std::ifstream is(path);
        if (!is)
            throw std::runtime_error("config: cannot open " + path);
        return parse(is);
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& def) const
    {
        auto it = kv_.find(key);
        return it == kv_.end() ? def : it->second;
    }

    double get_double(const std::string& key, double def) const
    {
        auto it = kv_.find(key);
        if (it == kv_.end())
            return def;
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size())
            throw std::invalid_argument("config: bad number for key " + key);
        return v;
    }

    int get_int(const std::string& key, int def) const
    {
        auto it = kv_.find(key);
        if (it == kv_.end())
            return def;
        std::size_t pos = 0;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size())
            throw std::invalid_argument("config: bad integer for key " + key);
        return v;
    }

    void set(const std::string& key, const std::string& val) { kv_[key] = val; }

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace lripct

#endif
