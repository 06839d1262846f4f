// Assess a normalized pipeline against a catalog and print the verdict
// per activity.
//
//   ./assess_pipeline data/iec62443-4-1-sample.json data/demo-pipeline.yaml

#include <iostream>

#include "s2c/s2c.hpp"

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: assess_pipeline <catalog.json> <pipeline.yaml|json>\n";
        return 2;
    }
    try {
        s2c::ActivityCatalog catalog = s2c::load_catalog(argv[1]);
        s2c::PipelineModel pipeline = s2c::parse_pipeline(argv[2]);
        s2c::AssessmentResult result = s2c::assess(pipeline, catalog, {});

        for (const auto& [id, verdict] : result.per_activity)
            std::cout << s2c::pad_right(id, 12) << s2c::to_string(verdict) << "\n";
        std::cout << "coverage: " << result.coverage_percent << "%\n";
    } catch (const s2c::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
