// Minimal library walkthrough: load a catalog, print its automation
// statistics and the first roadmap steps.
//
//   ./catalog_stats data/iec62443-4-1-sample.json

#include <iostream>

#include "s2c/s2c.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: catalog_stats <catalog.json>\n";
        return 2;
    }
    try {
        s2c::ActivityCatalog catalog = s2c::load_catalog(argv[1]);
        std::cout << s2c::summaries_to_text(s2c::summarize(catalog)) << "\n";

        std::cout << "first roadmap steps:\n";
        auto entries = s2c::roadmap(catalog);
        for (std::size_t i = 0; i < entries.size() && i < 5; ++i)
            std::cout << "  " << entries[i].rank << ". " << entries[i].activity_id << " ("
                      << s2c::to_string(entries[i].automation) << ")\n";
    } catch (const s2c::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
