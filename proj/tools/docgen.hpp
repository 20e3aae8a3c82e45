#pragma once
// ---------------------------------------------------------------------------
// docgen -- renders the two catalog sidecar documents:
//
//   errata.md  machine verdicts for entries flagged `suspect`: each verbatim
//              transcription either survives full-grid verification or is
//              condemned with a stored counterexample while its `-corrected`
//              twin passes.
//   audit.md   one line per entry mapping its id to the source locator it
//              was transcribed from, so the catalog can be checked for
//              coverage and duplicates by eye.
//
// Shared by the acceptance gate and the standalone mk_docs tool.
// ---------------------------------------------------------------------------
#include <string>
#include <vector>

#include "fibsum/catalog.hpp"
#include "fibsum/verify.hpp"

namespace fibsum {

struct SuspectVerdict {
    std::string id;
    std::string twin_id;           // empty when no -corrected twin ships
    VerificationReport verbatim;   // full-default-grid report
    VerificationReport twin;       // meaningful only when twin_id is set
    bool definitive = false;       // verbatim passes, or fails with a recorded
                                   // counterexample while the twin passes
};

// Runs full-default-grid verification of every suspect entry and its twin.
std::vector<SuspectVerdict> adjudicate_suspects(const std::vector<CatalogEntry>& catalog);

std::string render_errata(const std::vector<SuspectVerdict>& verdicts);
std::string render_audit(const std::vector<CatalogEntry>& catalog);

// Writes both documents under `dir` (created if needed); returns the paths.
std::vector<std::string> write_docs(const std::vector<CatalogEntry>& catalog,
                                    const std::vector<SuspectVerdict>& verdicts,
                                    const std::string& dir);

}  // namespace fibsum
