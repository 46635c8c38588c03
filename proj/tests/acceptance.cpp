// Runs a verification suite and prints one line per check and one verdict
// line per acceptance criterion.

#include "motext/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <map>

using namespace motext;

namespace {

const std::map<int, const char*> kCriteria = {
    {1, "Hopf well-definedness of B, A(2), A; tau_3 primitive"},
    {2, "Ext_B splits as M2[v3] ⊗ Ext_{A(2)} (dims and tau ranks)"},
    {3, "resolution Ext equals cobar homology"},
    {4, "Ext_{A(2)} relations and tau-torsion of h0 d0 e0^k"},
    {5, "h0^3 g2 = 0, M h1, p*(M h1) and its indeterminacy"},
    {6, "M h1 · h1^5 = e0^3 + d0 e0g"},
    {7, "values of p* on M P and the classes of stems 56, 60, 66"},
    {8, "M h1, M h2 nonzero; e0 p*(x) nonzero"},
    {9, "determinism: d∘d = 0, resume, homotopy choices"},
};

}  // namespace

int main(int argc, char** argv)
{
    std::string suite = "paper", manifest = default_manifest_path(), ckpt;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--suite"))
            suite = argv[i + 1];
        else if (!std::strcmp(argv[i], "--manifest"))
            manifest = argv[i + 1];
        else if (!std::strcmp(argv[i], "--checkpoint-dir"))
            ckpt = argv[i + 1];
    }
    setvbuf(stdout, nullptr, _IOLBF, 0);
    const auto t0 = std::chrono::steady_clock::now();
    WorkspaceOptions opts;
    opts.checkpoint_dir = ckpt;
    opts.log = [&](const std::string& m) {
        std::printf("  .. %s [%.1fs]\n", m.c_str(),
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };
    Workspace ws(opts);
    std::map<int, std::pair<int, int>> tally;  // criterion -> (passed, total)
    std::map<int, double> secs;
    auto outcomes = run_suite(ws, load_manifest(manifest), suite, [&](const CheckOutcome& o) {
        std::printf("  [%s] c%d %-22s expected \"%s\" computed \"%s\" (%s) %.1fs\n", o.pass ? "ok" : "FAIL",
                    o.entry.criterion, o.entry.id.c_str(), o.entry.expected.c_str(), o.computed.c_str(),
                    o.entry.provenance.c_str(), o.seconds);
        auto& t = tally[o.entry.criterion];
        t.first += o.pass;
        t.second += 1;
        secs[o.entry.criterion] += o.seconds;
    });
    bool all = true;
    for (const auto& [c, desc] : kCriteria) {
        auto it = tally.find(c);
        if (it == tally.end())
            continue;
        const bool pass = it->second.first == it->second.second;
        all = all && pass;
        std::printf("criterion %d: %s  %s (%d/%d checks, %.1fs)\n", c, pass ? "PASS" : "FAIL", desc, it->second.first,
                    it->second.second, secs[c]);
    }
    std::printf("suite %s: %s in %.1fs\n", suite.c_str(), all ? "PASS" : "FAIL",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return all ? 0 : 1;
}
