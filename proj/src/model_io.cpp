#include "dgafd/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dgafd/dataset.hpp"
#include "dgafd/errors.hpp"

namespace dgafd {

namespace {

using nlohmann::json;

json tree_to_json(const Tree& tree, int node) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) return json{{"leaf", n.weight}};
    return json{{"feature", n.feature},
                {"threshold", n.threshold},
                {"left", tree_to_json(tree, n.left)},
                {"right", tree_to_json(tree, n.right)}};
}

int tree_from_json(const json& j, Tree& tree) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (j.contains("leaf")) {
        tree.nodes[static_cast<std::size_t>(id)].weight = j.at("leaf").get<double>();
        return id;
    }
    const int feature = j.at("feature").get<int>();
    const double threshold = j.at("threshold").get<double>();
    const int left = tree_from_json(j.at("left"), tree);
    const int right = tree_from_json(j.at("right"), tree);
    TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
    n.feature = feature;
    n.threshold = threshold;
    n.left = left;
    n.right = right;
    return id;
}

json ensemble_to_json(const BoostedEnsemble& model) {
    json rounds = json::array();
    for (const auto& round_trees : model.trees) {
        json per_class = json::array();
        for (const Tree& t : round_trees) per_class.push_back(tree_to_json(t, 0));
        rounds.push_back(std::move(per_class));
    }
    return json{{"n_classes", model.n_classes},
                {"n_features", model.n_features},
                {"learning_rate", model.learning_rate},
                {"base_score", model.base_score},
                {"trees", std::move(rounds)}};
}

BoostedEnsemble ensemble_from_json(const json& j) {
    BoostedEnsemble model;
    model.n_classes = j.at("n_classes").get<int>();
    model.n_features = j.at("n_features").get<int>();
    model.learning_rate = j.at("learning_rate").get<double>();
    model.base_score = j.at("base_score").get<double>();
    for (const auto& round : j.at("trees")) {
        std::vector<Tree> round_trees;
        for (const auto& tj : round) {
            Tree t;
            tree_from_json(tj, t);
            round_trees.push_back(std::move(t));
        }
        model.trees.push_back(std::move(round_trees));
    }
    return model;
}

json payload_to_json(const ModelArtifact& a) {
    json ranking_entries = json::array();
    for (const auto& e : a.ranking.entries) {
        ranking_entries.push_back(json{{"feature", e.feature_index}, {"skewness", e.skewness}});
    }
    return json{
        {"ranking",
         {{"mode", a.ranking.mode == RankMode::Absolute ? "absolute" : "signed"},
          {"entries", std::move(ranking_entries)}}},
        {"window", {{"rank_start", a.window.rank_start}, {"features", a.window.feature_indices}}},
        {"emd",
         {{"axis", a.emd_axis == EmdAxis::Column ? "column" : "row"},
          {"sd_threshold", a.sift.sd_threshold},
          {"max_sift_iterations", a.sift.max_sift_iterations},
          {"min_extrema", a.sift.min_extrema}}},
        {"train_config",
         {{"rounds", a.train_config.rounds},
          {"max_depth", a.train_config.max_depth},
          {"learning_rate", a.train_config.learning_rate},
          {"l2_lambda", a.train_config.l2_lambda},
          {"min_split_gain", a.train_config.min_split_gain},
          {"min_child_hessian", a.train_config.min_child_hessian},
          {"seed", a.train_config.seed}}},
        {"dataset_fingerprint", a.dataset_fingerprint},
        {"feature_count", a.model.feature_count},
        {"root", ensemble_to_json(a.model.root)},
        {"discharge_branch", ensemble_to_json(a.model.discharge_branch)},
        {"thermal_branch", ensemble_to_json(a.model.thermal_branch)}};
}

ModelArtifact payload_from_json(const json& p) {
    ModelArtifact a;
    const auto& rj = p.at("ranking");
    a.ranking.mode = rj.at("mode").get<std::string>() == "signed" ? RankMode::Signed
                                                                  : RankMode::Absolute;
    for (const auto& ej : rj.at("entries")) {
        a.ranking.entries.push_back({ej.at("feature").get<int>(), ej.at("skewness").get<double>()});
    }
    a.window.rank_start = p.at("window").at("rank_start").get<int>();
    a.window.feature_indices = p.at("window").at("features").get<std::vector<int>>();
    const auto& emd = p.at("emd");
    a.emd_axis = emd.at("axis").get<std::string>() == "row" ? EmdAxis::Row : EmdAxis::Column;
    a.sift.sd_threshold = emd.at("sd_threshold").get<double>();
    a.sift.max_sift_iterations = emd.at("max_sift_iterations").get<int>();
    a.sift.min_extrema = emd.at("min_extrema").get<int>();
    const auto& tc = p.at("train_config");
    a.train_config.rounds = tc.at("rounds").get<int>();
    a.train_config.max_depth = tc.at("max_depth").get<int>();
    a.train_config.learning_rate = tc.at("learning_rate").get<double>();
    a.train_config.l2_lambda = tc.at("l2_lambda").get<double>();
    a.train_config.min_split_gain = tc.at("min_split_gain").get<double>();
    a.train_config.min_child_hessian = tc.at("min_child_hessian").get<double>();
    a.train_config.seed = tc.at("seed").get<std::uint64_t>();
    a.dataset_fingerprint = p.at("dataset_fingerprint").get<std::string>();
    a.model.feature_count = p.at("feature_count").get<int>();
    a.model.root = ensemble_from_json(p.at("root"));
    a.model.discharge_branch = ensemble_from_json(p.at("discharge_branch"));
    a.model.thermal_branch = ensemble_from_json(p.at("thermal_branch"));
    return a;
}

}  // namespace

std::string serialize_model(const ModelArtifact& artifact) {
    const json payload = payload_to_json(artifact);
    const std::string canonical = payload.dump();
    json doc{{"schema_version", artifact.schema_version},
             {"checksum", content_fingerprint(canonical)},
             {"payload", payload}};
    return doc.dump(2) + "\n";
}

ModelArtifact deserialize_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw CorruptArtifact(std::string("model artifact is not valid JSON: ") + e.what());
    }
    try {
        const int version = doc.at("schema_version").get<int>();
        if (version != kModelSchemaVersion) {
            throw VersionMismatch("model artifact schema version " + std::to_string(version) +
                                  " is not supported (expected " +
                                  std::to_string(kModelSchemaVersion) + ")");
        }
        const std::string canonical = doc.at("payload").dump();
        if (content_fingerprint(canonical) != doc.at("checksum").get<std::string>()) {
            throw CorruptArtifact("model artifact checksum mismatch");
        }
        ModelArtifact a = payload_from_json(doc.at("payload"));
        a.schema_version = version;
        return a;
    } catch (const json::exception& e) {
        throw CorruptArtifact(std::string("model artifact malformed: ") + e.what());
    }
}

void save_model(const ModelArtifact& artifact, const std::string& path) {
    write_file_atomic(path, serialize_model(artifact));
}

ModelArtifact load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model artifact '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw Error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

}  // namespace dgafd
