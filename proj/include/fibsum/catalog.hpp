#pragma once
// ---------------------------------------------------------------------------
// catalog -- the shipped corpus of identities, loaded from .fib files.
//
// A catalog directory holds UTF-8 text files, each a sequence of identity
// blocks in the DSL grammar.  Directive comments immediately before a block
// attach its metadata:
//
//     # group: G-P1
//     # source: section 3, theorem 1, line 2
//     # status: suspect          (optional; default normal)
//     identity ... { ... }
//
// Entries flagged `suspect` are transcribed verbatim from a source believed
// to contain a typo; each ships next to a `-corrected` twin and the verifier
// adjudicates which one is the true identity.
// ---------------------------------------------------------------------------
#include <stdexcept>
#include <string>
#include <vector>

#include "fibsum/dsl.hpp"

namespace fibsum {

enum class EntryStatus { Normal, Suspect };

struct CatalogEntry {
    IdentitySpec spec;
    std::string group;    // coverage-group tag, e.g. "G-P1"
    std::string source;   // human-readable locator, unique across the catalog
    EntryStatus status = EntryStatus::Normal;
    std::string file;     // catalog file the entry came from
    int line = 0;
};

struct CatalogError : std::runtime_error {
    explicit CatalogError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a catalog file exists but cannot be read (as opposed to
// content problems); callers map it to an I/O exit code.
struct CatalogIoError : CatalogError {
    explicit CatalogIoError(const std::string& msg) : CatalogError(msg) {}
};

// Parses every .fib file under `root` (sorted by filename), attaches
// directives, rejects duplicate ids, and returns entries sorted by
// (group, id).  An empty or missing directory yields an empty list; the
// caller decides whether that is fatal.  Parse failures abort with
// file:line:col diagnostics.
std::vector<CatalogEntry> load_catalog(const std::string& root);

// Looks up an entry by id.  Unknown ids raise CatalogError listing
// near-miss ids (closest by edit distance).
const CatalogEntry& entry(const std::vector<CatalogEntry>& catalog, const std::string& id);

}  // namespace fibsum
