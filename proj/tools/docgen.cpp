#include "docgen.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fibsum {

namespace {

// "X-verbatim" -> "X-corrected"; suspects without the suffix have no twin.
std::string twin_name(const std::string& id) {
    const std::string tag = "-verbatim";
    if (id.size() <= tag.size() || id.compare(id.size() - tag.size(), tag.size(), tag) != 0)
        return "";
    return id.substr(0, id.size() - tag.size()) + "-corrected";
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& catalog, const std::string& id) {
    for (const CatalogEntry& e : catalog)
        if (e.spec.id == id) return &e;
    return nullptr;
}

}  // namespace

std::vector<SuspectVerdict> adjudicate_suspects(const std::vector<CatalogEntry>& catalog) {
    std::vector<SuspectVerdict> verdicts;
    for (const CatalogEntry& e : catalog) {
        if (e.status != EntryStatus::Suspect) continue;
        SuspectVerdict v;
        v.id = e.spec.id;
        v.verbatim = verify_entry(e, default_grid_for(e));
        v.twin_id = twin_name(e.spec.id);
        if (const CatalogEntry* twin = find_entry(catalog, v.twin_id)) {
            v.twin = verify_entry(*twin, default_grid_for(*twin));
        } else {
            v.twin_id.clear();
        }
        v.definitive = v.verbatim.pass ||
                       (!v.verbatim.failures.empty() && !v.twin_id.empty() && v.twin.pass);
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

std::string render_errata(const std::vector<SuspectVerdict>& verdicts) {
    std::string out;
    out += "# Errata verdicts\n\n";
    out += "Entries flagged `suspect` are transcribed exactly as displayed at their\n";
    out += "source locator even though the transcription looked defective.  The\n";
    out += "verifier adjudicates each one over the full default grid: either the\n";
    out += "displayed form holds after all, or it fails with a counterexample while\n";
    out += "the `-corrected` twin (the conjectured intended form) passes.\n\n";
    if (verdicts.empty()) out += "No suspect entries in the catalog.\n";
    for (const SuspectVerdict& v : verdicts) {
        out += "## " + v.id + "\n\n";
        if (v.verbatim.pass) {
            out += "**Verdict: the displayed form holds.**  " +
                   std::to_string(v.verbatim.cases_checked) +
                   " cases checked, no failures";
            if (!v.twin_id.empty() && v.twin.pass)
                out += "; the `" + v.twin_id + "` twin also passes, so the two forms " +
                       "agree on the grid and the flag is withdrawn";
            out += ".\n\n";
            continue;
        }
        out += "**Verdict: the displayed form is defective.**  " +
               std::to_string(v.verbatim.failure_count) + " of " +
               std::to_string(v.verbatim.cases_checked) + " cases fail";
        if (!v.twin_id.empty())
            out += "; `" + v.twin_id + "` " + (v.twin.pass ? "passes" : "ALSO FAILS") +
                   " over the same default grid";
        out += ".\n\nFirst counterexamples:\n\n";
        for (const CaseFailure& f : v.verbatim.failures) {
            out += "- at " + f.binding.render() + ": ";
            if (f.error.empty())
                out += "lhs = " + f.lhs + ", rhs = " + f.rhs + "\n";
            else
                out += f.error + "\n";
        }
        out += "\n";
    }
    return out;
}

std::string render_audit(const std::vector<CatalogEntry>& catalog) {
    std::string out;
    out += "# Catalog audit: entry id -> source locator\n\n";
    out += "Locators are unique by construction (the loader rejects duplicates),\n";
    out += "so this listing doubles as a coverage inventory of the transcribed\n";
    out += "material, one displayed equation per entry.\n\n";
    out += "| id | group | status | source locator | defined at |\n";
    out += "|----|-------|--------|----------------|------------|\n";
    for (const CatalogEntry& e : catalog) {
        out += "| " + e.spec.id + " | " + e.group + " | " +
               (e.status == EntryStatus::Suspect ? "suspect" : "normal") + " | " + e.source +
               " | " + e.file + ":" + std::to_string(e.line) + " |\n";
    }
    out += "\n" + std::to_string(catalog.size()) + " entries.\n";
    return out;
}

std::vector<std::string> write_docs(const std::vector<CatalogEntry>& catalog,
                                    const std::vector<SuspectVerdict>& verdicts,
                                    const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const std::string& body) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        out << body;
        written.push_back(path.string());
    };
    emit("errata.md", render_errata(verdicts));
    emit("audit.md", render_audit(catalog));
    return written;
}

}  // namespace fibsum
