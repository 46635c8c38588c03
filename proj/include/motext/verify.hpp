#pragma once

// Verification harness: checks listed in a provenance-annotated manifest are
// run against resolutions held by a Workspace, each producing a computed
// string compared verbatim with the manifest's expected value.

#include "motext/naming.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace motext {

struct ManifestEntry {
    std::string id;
    int criterion = 0;
    std::vector<std::string> suites;
    std::string check;
    std::map<std::string, std::string> args;
    std::string expected;
    std::string provenance;  // source tag of the expected value
    std::string quote;

    bool in_suite(const std::string& s) const;
    std::string arg(const std::string& key) const;
    int int_arg(const std::string& key) const;
};

std::vector<ManifestEntry> load_manifest(const std::string& path);
/// Manifest shipped with the sources.
std::string default_manifest_path();

struct WorkspaceOptions {
    std::string checkpoint_dir;  // empty: no persistence
    /// Per-preset checkpoint files overriding <checkpoint_dir>/<preset>.ckpt.
    std::map<std::string, std::string> files;
    /// Never writes; an existing checkpoint that does not cover a need is an
    /// error naming the required bounds.
    bool read_only = false;
    int threads = 1;
    std::function<void(const std::string&)> log;
};

/// Resolutions by preset name, grown on demand and optionally persisted as
/// <checkpoint_dir>/<preset>.ckpt.
class Workspace {
public:
    explicit Workspace(WorkspaceOptions opts = {});
    ~Workspace();

    /// Records that Ext of preset is needed for s <= stem, f <= f.
    void require(const std::string& preset, int stem, int f);
    /// Builds or loads every required region.
    void prepare();
    Resolution& resolution(const std::string& preset);
    bool has(const std::string& preset) const;
    std::vector<std::string> presets() const;

    /// Namer for ring A, A2 or B (B inflates names from A2).
    const Namer& namer(const std::string& ring);
    /// p*: Ext over A -> Ext over B.
    const ChangeOfRings& restriction();

private:
    struct Need {
        int stem = 0, f = 0;
    };
    WorkspaceOptions opts_;
    std::map<std::string, std::vector<Need>> needs_;
    std::map<std::string, std::unique_ptr<Resolution>> res_;
    std::map<std::string, std::unique_ptr<Namer>> namers_;
    std::unique_ptr<ChangeOfRings> restriction_;
};

struct CheckOutcome {
    ManifestEntry entry;
    std::string computed;
    bool pass = false;
    double seconds = 0;
};

/// Degree (s, f, w) of a name expression over ring, read off the naming table.
std::tuple<int, int, int> expression_degree(const std::string& ring, const std::string& expr);

/// Adds the regions a check needs to ws.
void require_for(Workspace& ws, const ManifestEntry& e);
/// Runs one check; exceptions become a failed outcome with the message.
CheckOutcome run_check(Workspace& ws, const ManifestEntry& e);
/// Selects the suite's entries, prepares ws, runs them in order.
std::vector<CheckOutcome> run_suite(Workspace& ws, const std::vector<ManifestEntry>& manifest, const std::string& suite,
                                    const std::function<void(const CheckOutcome&)>& on_each = {});

}  // namespace motext
