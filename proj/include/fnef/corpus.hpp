#ifndef FNEF_CORPUS_HPP
#define FNEF_CORPUS_HPP

#include "certificate.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef FNEF_CORPUS_DIR
#define FNEF_CORPUS_DIR "corpus"
#endif

namespace fnef {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorpusEntry {
    std::string id;
    std::filesystem::path path;
    std::string text;
    Certificate certificate;
    std::vector<LintFinding> lint;
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::filesystem::path default_corpus_dir() { return FNEF_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads every file listed in MANIFEST, checking sums, parsing and annotations.
inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir = default_corpus_dir()) {
    std::istringstream manifest(read_file(dir / "MANIFEST"));
    std::vector<CorpusEntry> out;
    std::string line;
    while (std::getline(manifest, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string sum, name;
        if (!(ls >> sum >> name)) throw CorpusError("malformed MANIFEST line '" + line + "'");
        CorpusEntry e;
        e.path = dir / name;
        e.text = read_file(e.path);
        if (hex64(fnv1a64(e.text)) != sum) throw CorpusError("checksum mismatch for " + name);
        try {
            e.certificate = parse_certificate(e.text);
        } catch (const CertificateSyntaxError& err) {
            throw CorpusError(name + ": " + err.what());
        }
        e.id = e.certificate.id.empty() ? e.path.stem().string() : e.certificate.id;
        e.lint = lint_certificate(e.certificate);
        std::vector<std::string> found;
        for (const auto& f : e.lint) found.push_back(f.to_string());
        if (found != e.certificate.lint_notes) throw CorpusError(name + ": lint annotations do not match the terms");
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
    return out;
}

inline std::vector<Certificate> appendix_corpus(const std::filesystem::path& dir = default_corpus_dir()) {
    std::vector<Certificate> out;
    for (auto& e : load_corpus(dir)) out.push_back(std::move(e.certificate));
    return out;
}

}  // namespace fnef

#endif
