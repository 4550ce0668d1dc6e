// Generates the deterministic synthetic fixture used by the tests and the
// README walk-through: a directory of raw documents plus a matching
// mock-rewritten corpus for training.

#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "styloseg/corpus.hpp"
#include "styloseg/io.hpp"
#include "styloseg/regen.hpp"
#include "styloseg/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Write a deterministic synthetic corpus fixture"};
    std::string out_dir;
    std::size_t docs = 60;
    std::size_t defective = 10;
    std::uint64_t seed = 42;
    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--docs", docs, "Well-formed document count");
    app.add_option("--defective", defective, "Defective document count (rejection fixtures)");
    app.add_option("--seed", seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

    namespace fs = std::filesystem;
    try {
        const fs::path corpus_dir = fs::path(out_dir) / "corpus";
        const fs::path llm_dir = fs::path(out_dir) / "llm";
        styloseg::synthetic::write_fixture_corpus(corpus_dir, docs, defective, seed);

        // mock-rewritten combined texts of the well-formed documents; these
        // pair with prepare's output as a ready-made LLM training corpus
        styloseg::regen::MockProvider provider(seed);
        std::size_t rewritten = 0;
        for (std::size_t i = 0; i < docs; ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "doc%03zu", i);
            const std::string id = buf;
            const auto raw = styloseg::synthetic::generate_document(id, seed);
            const auto sectioned = styloseg::corpus::detect_sections({id, raw.body});
            styloseg::io::write_file(llm_dir / (id + ".txt"), provider.rewrite(sectioned.combined));
            ++rewritten;
        }
        std::printf("fixture: %zu documents (+%zu defective) in %s, %zu rewritten in %s\n", docs,
                    defective, corpus_dir.string().c_str(), rewritten,
                    llm_dir.string().c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
