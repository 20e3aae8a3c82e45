// Standalone regeneration of the catalog sidecar documents (docs/errata.md,
// docs/audit.md).  The acceptance gate writes the same files; this tool
// exists so they can be refreshed after catalog edits without running the
// whole gate.
//
//   mk_docs [--catalog DIR] [--out DIR]

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "docgen.hpp"
#include "fibsum/catalog.hpp"

int main(int argc, char** argv) {
    CLI::App app{"regenerate catalog sidecar documents"};
    std::string catalog_dir = FIBSUM_DEFAULT_CATALOG;
    std::string out_dir = "docs";
    app.add_option("--catalog", catalog_dir, "catalog directory");
    app.add_option("--out", out_dir, "output directory");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto catalog = fibsum::load_catalog(catalog_dir);
        if (catalog.empty()) {
            std::cerr << "error: no catalog entries under '" << catalog_dir << "'\n";
            return 1;
        }
        const auto verdicts = fibsum::adjudicate_suspects(catalog);
        for (const std::string& path : fibsum::write_docs(catalog, verdicts, out_dir))
            std::cout << "wrote " << path << "\n";
        for (const auto& v : verdicts)
            if (!v.definitive) {
                std::cerr << "warning: no definitive verdict for '" << v.id << "'\n";
                return 1;
            }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
