#include "netgauntlet/kdd99.hpp"

#include <cctype>
#include <fstream>

namespace netgauntlet::kdd99 {

namespace {

std::vector<FeatureMeta> build_schema() {
    const std::vector<std::pair<const char*, FeatureKind>> defs = {
        {"duration", FeatureKind::continuous},
        {"protocol_type", FeatureKind::categorical},
        {"service", FeatureKind::categorical},
        {"flag", FeatureKind::categorical},
        {"src_bytes", FeatureKind::continuous},
        {"dst_bytes", FeatureKind::continuous},
        {"land", FeatureKind::continuous},
        {"wrong_fragment", FeatureKind::continuous},
        {"urgent", FeatureKind::continuous},
        {"hot", FeatureKind::continuous},
        {"num_failed_logins", FeatureKind::continuous},
        {"logged_in", FeatureKind::continuous},
        {"num_compromised", FeatureKind::continuous},
        {"root_shell", FeatureKind::continuous},
        {"su_attempted", FeatureKind::continuous},
        {"num_root", FeatureKind::continuous},
        {"num_file_creations", FeatureKind::continuous},
        {"num_shells", FeatureKind::continuous},
        {"num_access_files", FeatureKind::continuous},
        {"num_outbound_cmds", FeatureKind::continuous},
        {"is_host_login", FeatureKind::continuous},
        {"is_guest_login", FeatureKind::continuous},
        {"count", FeatureKind::continuous},
        {"srv_count", FeatureKind::continuous},
        {"serror_rate", FeatureKind::continuous},
        {"srv_serror_rate", FeatureKind::continuous},
        {"rerror_rate", FeatureKind::continuous},
        {"srv_rerror_rate", FeatureKind::continuous},
        {"same_srv_rate", FeatureKind::continuous},
        {"diff_srv_rate", FeatureKind::continuous},
        {"srv_diff_host_rate", FeatureKind::continuous},
        {"dst_host_count", FeatureKind::continuous},
        {"dst_host_srv_count", FeatureKind::continuous},
        {"dst_host_same_srv_rate", FeatureKind::continuous},
        {"dst_host_diff_srv_rate", FeatureKind::continuous},
        {"dst_host_same_src_port_rate", FeatureKind::continuous},
        {"dst_host_srv_diff_host_rate", FeatureKind::continuous},
        {"dst_host_serror_rate", FeatureKind::continuous},
        {"dst_host_srv_serror_rate", FeatureKind::continuous},
        {"dst_host_rerror_rate", FeatureKind::continuous},
        {"dst_host_srv_rerror_rate", FeatureKind::continuous},
    };
    std::vector<FeatureMeta> schema;
    schema.reserve(defs.size());
    for (const auto& [name, kind] : defs) {
        schema.push_back({name, kind, static_cast<int>(schema.size())});
    }
    return schema;
}

std::unordered_map<std::string, int> build_attack_categories() {
    // 1=dos, 2=probe, 3=r2l, 4=u2r
    return {
        {"back", 1},       {"land", 1},          {"neptune", 1},   {"pod", 1},
        {"smurf", 1},      {"teardrop", 1},      {"apache2", 1},   {"udpstorm", 1},
        {"processtable", 1}, {"mailbomb", 1},
        {"satan", 2},      {"ipsweep", 2},       {"nmap", 2},      {"portsweep", 2},
        {"mscan", 2},      {"saint", 2},
        {"guess_passwd", 3}, {"ftp_write", 3},   {"imap", 3},      {"phf", 3},
        {"multihop", 3},   {"warezmaster", 3},   {"warezclient", 3}, {"spy", 3},
        {"xlock", 3},      {"xsnoop", 3},        {"snmpguess", 3}, {"snmpgetattack", 3},
        {"httptunnel", 3}, {"sendmail", 3},      {"named", 3},     {"worm", 3},
        {"buffer_overflow", 4}, {"loadmodule", 4}, {"rootkit", 4}, {"perl", 4},
        {"sqlattack", 4},  {"xterm", 4},         {"ps", 4},
    };
}

} // namespace

const std::vector<FeatureMeta>& schema() {
    static const std::vector<FeatureMeta> s = build_schema();
    return s;
}

const std::unordered_map<std::string, int>& attack_categories() {
    static const std::unordered_map<std::string, int> m = build_attack_categories();
    return m;
}

std::unordered_map<std::string, int> load_attack_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open attack map file: " + path);
    std::unordered_map<std::string, int> map;
    const std::unordered_map<std::string, int> category_ids = {
        {"dos", 1}, {"probe", 2}, {"r2l", 3}, {"u2r", 4}};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ConfigError("attack map line '" + line + "' is not name:category");
        std::string name = canonical_label(line.substr(0, colon));
        std::string cat = line.substr(colon + 1);
        auto it = category_ids.find(cat);
        if (it == category_ids.end()) {
            throw ConfigError("unknown attack category '" + cat + "' for " + name);
        }
        map[name] = it->second;
    }
    if (map.empty()) throw ConfigError("attack map file " + path + " defines no attacks");
    return map;
}

LabelScheme scheme(LabelMode mode) {
    return mode == LabelMode::binary ? LabelScheme::binary()
                                     : LabelScheme::category5(attack_categories());
}

LabelScheme scheme(LabelMode mode, const std::string& attack_map_path) {
    if (mode == LabelMode::binary) return LabelScheme::binary();
    return LabelScheme::category5(load_attack_map(attack_map_path));
}

} // namespace netgauntlet::kdd99
