#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "folia/dynamics.hpp"
#include "folia/parse.hpp"
#include "folia/serialize.hpp"

namespace folia {

/// A fixture file that cannot be read or does not follow the fixture layout.
class CorpusLoadError : public std::runtime_error {
public:
    CorpusLoadError(const std::filesystem::path& p, const std::string& why)
        : std::runtime_error(p.string() + ": " + why), path_(p) {}
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct Fixture {
    std::string name;
    std::string group;
    std::string topic;
    bool golden = true;
    std::string check;
    std::filesystem::path source;   // fixture file
    Json spec;                      // the whole fixture document
};

struct CorpusOptions {
    std::string filter;             // substring of name or group; empty keeps all
    int max_steps = 40;
    int probe_budget = 6;
    int jet_degree = 8;
    DynamicsConfig dynamics;
    bool parallel = true;
};

/// Every *.json under `dir`, sorted by fixture name. Throws CorpusLoadError.
std::vector<Fixture> load_corpus(const std::filesystem::path& dir);
Fixture load_fixture(const std::filesystem::path& file);

/// One entry per fixture: name, group, topic, golden, status (pass/fail/skipped), details, message.
Json run_fixture(const Fixture& f, const CorpusOptions& opts);
/// Report with fixtures in name order and a summary; identical across runs.
Json run_corpus(const std::vector<Fixture>& fixtures, const CorpusOptions& opts);

/// Field or form file, or the inline system of a fixture.
ParsedSystem load_system_file(const std::filesystem::path& file);

} // namespace folia
