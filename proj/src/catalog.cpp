#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fibsum/catalog.hpp"

namespace fibsum {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogIoError("cannot open catalog file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Classic dynamic-programming edit distance, used only for suggestions.
std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, subst});
            diag = up;
        }
    }
    return row[b.size()];
}

}  // namespace

std::vector<CatalogEntry> load_catalog(const std::string& root) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& item : fs::directory_iterator(root, ec)) {
        if (item.is_regular_file() && item.path().extension() == ".fib")
            files.push_back(item.path());
    }
    if (ec) return {};  // missing directory: empty catalog, caller warns
    std::sort(files.begin(), files.end());

    std::vector<CatalogEntry> entries;
    std::map<std::string, std::string> seen_ids;      // id -> file:line
    std::map<std::string, std::string> seen_sources;  // source -> id
    for (const fs::path& path : files) {
        const std::string filename = path.filename().string();
        std::vector<ParsedBlock> blocks;
        try {
            blocks = parse_identity_file(read_file(path), filename);
        } catch (const ParseError& e) {
            throw CatalogError(e.what());
        }
        for (ParsedBlock& b : blocks) {
            const std::string at = filename + ":" + std::to_string(b.line);
            if (b.group.empty())
                throw CatalogError(at + ": entry '" + b.spec.id + "' has no '# group:' directive");
            if (b.source.empty())
                throw CatalogError(at + ": entry '" + b.spec.id + "' has no '# source:' directive");
            CatalogEntry e;
            if (b.status.empty() || b.status == "normal") {
                e.status = EntryStatus::Normal;
            } else if (b.status == "suspect") {
                e.status = EntryStatus::Suspect;
            } else {
                throw CatalogError(at + ": entry '" + b.spec.id + "' has unknown status '" +
                                   b.status + "' (expected normal or suspect)");
            }
            auto [id_it, id_fresh] = seen_ids.emplace(b.spec.id, at);
            if (!id_fresh)
                throw CatalogError(at + ": duplicate id '" + b.spec.id + "' (first defined at " +
                                   id_it->second + ")");
            auto [src_it, src_fresh] = seen_sources.emplace(b.source, b.spec.id);
            if (!src_fresh)
                throw CatalogError(at + ": source locator '" + b.source + "' already used by '" +
                                   src_it->second + "' (locators must be distinct)");
            e.spec = std::move(b.spec);
            e.group = std::move(b.group);
            e.source = std::move(b.source);
            e.file = filename;
            e.line = b.line;
            entries.push_back(std::move(e));
        }
    }
    std::sort(entries.begin(), entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        if (a.group != b.group) return a.group < b.group;
        return a.spec.id < b.spec.id;
    });
    return entries;
}

const CatalogEntry& entry(const std::vector<CatalogEntry>& catalog, const std::string& id) {
    for (const CatalogEntry& e : catalog)
        if (e.spec.id == id) return e;
    // Rank every id by edit distance and offer the closest few.
    std::vector<std::pair<std::size_t, const std::string*>> ranked;
    for (const CatalogEntry& e : catalog) ranked.emplace_back(edit_distance(id, e.spec.id), &e.spec.id);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string msg = "unknown id '" + id + "'";
    std::string sep = "; did you mean: ";
    std::size_t shown = 0;
    for (const auto& [dist, name] : ranked) {
        if (shown >= 5 || dist > std::max<std::size_t>(3, id.size() / 2)) break;
        msg += sep + *name;
        sep = ", ";
        ++shown;
    }
    throw CatalogError(msg);
}

}  // namespace fibsum
