#include "netgauntlet/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/kdd99.hpp"
#include "netgauntlet/rng.hpp"

namespace netgauntlet {

namespace {

// Per-10000 record mix. Flood traffic dominates, probe classes are small,
// r2l/u2r are a handful of records each — the usual heavy skew of captured
// traffic.
struct MixEntry {
    const char* label;
    int weight;
};

constexpr MixEntry kMix[] = {
    {"normal", 1970}, {"smurf", 5650},      {"neptune", 2120},     {"back", 60},
    {"teardrop", 60}, {"pod", 40},          {"satan", 36},         {"ipsweep", 26},
    {"portsweep", 16}, {"nmap", 8},         {"warezclient", 5},    {"guess_passwd", 4},
    {"buffer_overflow", 3}, {"rootkit", 2},
};

// Feature slots referenced by the templates, matching the 41-column schema.
enum : std::size_t {
    F_duration = 0, F_proto = 1, F_service = 2, F_flag = 3, F_src = 4, F_dst = 5,
    F_wrong_frag = 7, F_hot = 9, F_failed = 10, F_logged = 11, F_compromised = 12,
    F_root_shell = 13, F_num_root = 15, F_file_creations = 16, F_shells = 17,
    F_access_files = 18, F_guest = 21, F_count = 22, F_srv_count = 23,
    F_serror = 24, F_srv_serror = 25, F_rerror = 26, F_srv_rerror = 27,
    F_same_srv = 28, F_diff_srv = 29, F_srv_diff_host = 30, F_dh_count = 31,
    F_dh_srv_count = 32, F_dh_same_srv = 33, F_dh_diff_srv = 34,
    F_dh_same_src_port = 35, F_dh_srv_diff_host = 36,
};

struct Rec {
    std::array<double, 41> v{};
    std::string proto;
    std::string service;
    std::string flag;
};

double r2(double x) { return std::round(x * 100.0) / 100.0; }
double c01(double x) { return std::clamp(x, 0.0, 1.0); }

int ui(Rng& g, int lo, int hi) {
    return lo + static_cast<int>(g.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

bool coin(Rng& g, double p) { return g.next_unit() < p; }

const char* pick(Rng& g, std::initializer_list<std::pair<const char*, double>> table) {
    double u = g.next_unit();
    double acc = 0.0;
    for (const auto& [name, w] : table) {
        acc += w;
        if (u < acc) return name;
    }
    return table.end()[-1].first;
}

void fill_normal(Rec& r, Rng& g) {
    double u = g.next_unit();
    if (u < 0.55) {
        r.proto = "tcp";
        r.service = pick(g, {{"http", 0.6}, {"smtp", 0.2}, {"ftp", 0.1}, {"telnet", 0.1}});
        const char* flag = pick(g, {{"SF", 0.92}, {"REJ", 0.03}, {"RSTO", 0.03}, {"RSTR", 0.02}});
        r.flag = flag;
        if (r.flag == "SF") {
            r.v[F_duration] = r.service == "http" ? ui(g, 0, 60) : ui(g, 1, 60);
            r.v[F_src] = ui(g, 100, 2500);
            r.v[F_dst] = ui(g, 300, 6200);
            r.v[F_logged] = 1;
        } else {
            r.v[F_src] = ui(g, 0, 80);
            if (r.flag == "RSTR") {
                r.v[F_rerror] = r2(g.next_range(0.4, 0.9));
            } else {
                r.v[F_serror] = r2(g.next_range(0.2, 0.7));
            }
        }
    } else if (u < 0.75) {
        r.proto = "udp";
        r.service = pick(g, {{"domain_u", 0.7}, {"ntp_u", 0.3}});
        r.flag = "SF";
        r.v[F_duration] = ui(g, 1, 5);
        r.v[F_src] = ui(g, 20, 300);
        r.v[F_dst] = ui(g, 20, 300);
    } else {
        r.proto = "icmp";
        r.service = pick(g, {{"eco_i", 0.6}, {"ecr_i", 0.4}});
        r.flag = "SF";
        r.v[F_src] = ui(g, 8, 520);
    }
    if (coin(g, 0.02)) r.v[F_hot] = 1;
    if (coin(g, 0.015)) r.v[F_compromised] = ui(g, 1, 2);
    if (coin(g, 0.025)) r.v[F_file_creations] = ui(g, 1, 2);
    if (coin(g, 0.015)) r.v[F_shells] = 1;
    if (coin(g, 0.025)) r.v[F_access_files] = ui(g, 1, 2);
    if (coin(g, 0.025)) r.v[F_guest] = 1;
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_smurf(Rec& r, Rng& g) {
    r.proto = "icmp";
    r.service = "ecr_i";
    r.flag = "SF";
    r.v[F_src] = ui(g, 508, 1480);
    r.v[F_count] = ui(g, 200, 511);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 60, 255);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.1, 0.4));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_neptune(Rec& r, Rng& g) {
    r.proto = "tcp";
    r.service = pick(g, {{"private", 0.5}, {"http", 0.3}, {"telnet", 0.1}, {"ftp", 0.1}});
    r.flag = pick(g, {{"S0", 0.85}, {"REJ", 0.08}, {"RSTO", 0.07}});
    r.v[F_src] = ui(g, 1, 400);
    if (r.flag == "S0") {
        r.v[F_serror] = r2(g.next_range(0.92, 1.0));
    } else {
        r.v[F_serror] = r2(g.next_range(0.2, 0.6));
        r.v[F_rerror] = r2(g.next_range(0.0, 0.05));
    }
    r.v[F_count] = ui(g, 200, 511);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 60, 255);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_back(Rec& r, Rng& g) {
    r.proto = "tcp";
    r.service = "http";
    r.flag = "SF";
    r.v[F_duration] = ui(g, 0, 3);
    r.v[F_src] = ui(g, 5400, 6200);
    r.v[F_dst] = ui(g, 3000, 6200);
    r.v[F_logged] = 1;
    r.v[F_hot] = ui(g, 1, 2);
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_teardrop(Rec& r, Rng& g) {
    r.proto = "udp";
    r.service = "private";
    r.flag = "SF";
    r.v[F_wrong_frag] = ui(g, 1, 3);
    r.v[F_src] = ui(g, 20, 40);
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_pod(Rec& r, Rng& g) {
    r.proto = "icmp";
    r.service = pick(g, {{"ecr_i", 0.7}, {"eco_i", 0.3}});
    r.flag = "SF";
    r.v[F_wrong_frag] = ui(g, 1, 2);
    r.v[F_src] = ui(g, 564, 1480);
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_satan(Rec& r, Rng& g) {
    double u = g.next_unit();
    r.proto = u < 0.7 ? "tcp" : (u < 0.9 ? "udp" : "icmp");
    r.service = pick(g, {{"private", 0.4}, {"other", 0.3}, {"http", 0.15}, {"telnet", 0.15}});
    r.flag = r.proto == "tcp" ? pick(g, {{"REJ", 0.4}, {"RSTR", 0.3}, {"SF", 0.3}}) : "SF";
    r.v[F_src] = ui(g, 0, 50);
    r.v[F_dst] = ui(g, 0, 40);
    if (r.flag == "REJ" || r.flag == "RSTR") {
        r.v[F_rerror] = r2(g.next_range(0.6, 1.0));
    } else {
        r.v[F_rerror] = r2(g.next_range(0.0, 0.1));
    }
    r.v[F_serror] = r2(g.next_range(0.0, 0.1));
    r.v[F_count] = ui(g, 1, 10);
    r.v[F_same_srv] = r2(g.next_range(0.05, 0.35));
    r.v[F_srv_diff_host] = r2(g.next_range(0.45, 0.9));
    r.v[F_dh_count] = ui(g, 1, 30);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.3, 0.7));
}

void fill_ipsweep(Rec& r, Rng& g) {
    if (coin(g, 0.8)) {
        r.proto = "icmp";
        r.service = "eco_i";
    } else {
        r.proto = "tcp";
        r.service = "http";
    }
    r.flag = "SF";
    r.v[F_src] = ui(g, 8, 20);
    r.v[F_count] = ui(g, 1, 5);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.5, 1.0));
    r.v[F_dh_count] = ui(g, 1, 10);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.3, 0.9));
}

void fill_portsweep(Rec& r, Rng& g) {
    r.proto = "tcp";
    r.service = pick(g, {{"private", 0.4}, {"other", 0.3}, {"http", 0.15}, {"smtp", 0.15}});
    r.flag = pick(g, {{"REJ", 0.35}, {"RSTR", 0.35}, {"SF", 0.3}});
    r.v[F_src] = ui(g, 0, 20);
    r.v[F_dst] = ui(g, 0, 20);
    if (r.flag != "SF") r.v[F_rerror] = r2(g.next_range(0.5, 1.0));
    r.v[F_count] = ui(g, 1, 6);
    r.v[F_same_srv] = r2(g.next_range(0.05, 0.3));
    r.v[F_srv_diff_host] = r2(g.next_range(0.45, 0.8));
    r.v[F_dh_count] = ui(g, 1, 20);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.3, 0.6));
}

void fill_nmap(Rec& r, Rng& g) {
    double u = g.next_unit();
    r.proto = u < 0.6 ? "tcp" : (u < 0.8 ? "udp" : "icmp");
    r.service = r.proto == "icmp" ? "eco_i" : pick(g, {{"private", 0.6}, {"other", 0.4}});
    r.flag = r.proto == "tcp" && coin(g, 0.5) ? "REJ" : "SF";
    r.v[F_src] = ui(g, 0, 30);
    if (r.flag == "REJ") r.v[F_rerror] = r2(g.next_range(0.6, 1.0));
    r.v[F_count] = ui(g, 1, 4);
    r.v[F_same_srv] = r2(g.next_range(0.05, 0.35));
    r.v[F_srv_diff_host] = r2(g.next_range(0.45, 0.9));
    r.v[F_dh_count] = ui(g, 1, 15);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.3, 0.6));
}

void fill_warezclient(Rec& r, Rng& g) {
    r.proto = "tcp";
    r.service = "ftp";
    r.flag = "SF";
    r.v[F_duration] = ui(g, 200, 600);
    r.v[F_src] = ui(g, 400, 1200);
    r.v[F_dst] = ui(g, 100, 400);
    r.v[F_logged] = 1;
    r.v[F_guest] = 1;
    r.v[F_hot] = ui(g, 1, 4);
    r.v[F_compromised] = ui(g, 1, 2);
    r.v[F_file_creations] = ui(g, 1, 3);
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_guess_passwd(Rec& r, Rng& g) {
    r.proto = "tcp";
    r.service = "telnet";
    r.flag = "RSTO";
    r.v[F_duration] = ui(g, 1, 10);
    r.v[F_src] = ui(g, 120, 300);
    r.v[F_dst] = ui(g, 200, 500);
    r.v[F_failed] = ui(g, 3, 6);
    r.v[F_hot] = ui(g, 1, 2);
    r.v[F_guest] = 1;
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_buffer_overflow(Rec& r, Rng& g) {
    r.proto = "tcp";
    r.service = "telnet";
    r.flag = "SF";
    r.v[F_duration] = ui(g, 200, 500);
    r.v[F_src] = ui(g, 1000, 2000);
    r.v[F_dst] = ui(g, 50, 300);
    r.v[F_logged] = 1;
    r.v[F_hot] = ui(g, 1, 3);
    r.v[F_root_shell] = 1;
    r.v[F_compromised] = ui(g, 1, 2);
    r.v[F_file_creations] = ui(g, 2, 4);
    r.v[F_access_files] = ui(g, 1, 2);
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_rootkit(Rec& r, Rng& g) {
    r.proto = coin(g, 0.5) ? "tcp" : "udp";
    r.service = "private";
    r.flag = "SF";
    r.v[F_duration] = ui(g, 200, 500);
    r.v[F_src] = ui(g, 300, 1500);
    r.v[F_dst] = ui(g, 50, 300);
    r.v[F_logged] = 1;
    r.v[F_hot] = ui(g, 1, 2);
    r.v[F_root_shell] = 1;
    r.v[F_compromised] = ui(g, 1, 3);
    r.v[F_file_creations] = ui(g, 1, 3);
    r.v[F_count] = ui(g, 1, 40);
    r.v[F_same_srv] = r2(g.next_range(0.5, 1.0));
    r.v[F_srv_diff_host] = r2(g.next_range(0.0, 0.25));
    r.v[F_dh_count] = ui(g, 10, 200);
    r.v[F_dh_same_src_port] = r2(g.next_range(0.0, 0.3));
    r.v[F_dh_srv_diff_host] = r2(g.next_range(0.0, 0.2));
}

void fill_record(const std::string& label, Rec& r, Rng& g) {
    if (label == "normal") fill_normal(r, g);
    else if (label == "smurf") fill_smurf(r, g);
    else if (label == "neptune") fill_neptune(r, g);
    else if (label == "back") fill_back(r, g);
    else if (label == "teardrop") fill_teardrop(r, g);
    else if (label == "pod") fill_pod(r, g);
    else if (label == "satan") fill_satan(r, g);
    else if (label == "ipsweep") fill_ipsweep(r, g);
    else if (label == "portsweep") fill_portsweep(r, g);
    else if (label == "nmap") fill_nmap(r, g);
    else if (label == "warezclient") fill_warezclient(r, g);
    else if (label == "guess_passwd") fill_guess_passwd(r, g);
    else if (label == "buffer_overflow") fill_buffer_overflow(r, g);
    else fill_rootkit(r, g);

    // Traffic-wide couplings shared by every class: the per-service and
    // per-destination-host aggregates track their base counters closely.
    bool u2r = label == "buffer_overflow" || label == "rootkit";
    r.v[F_srv_count] = std::round(r.v[F_count] * g.next_range(0.75, 0.95));
    r.v[F_srv_serror] = r2(c01(r.v[F_serror] + g.next_range(-0.02, 0.02)));
    r.v[37] = r2(c01(r.v[F_serror] + g.next_range(-0.02, 0.02)));
    r.v[38] = r2(c01(r.v[F_serror] + g.next_range(-0.02, 0.02)));
    r.v[F_srv_rerror] = r2(c01(r.v[F_rerror] + g.next_range(-0.02, 0.02)));
    r.v[39] = r2(c01(r.v[F_rerror] + g.next_range(-0.02, 0.02)));
    r.v[40] = r2(c01(r.v[F_rerror] + g.next_range(-0.02, 0.02)));
    r.v[F_diff_srv] = r2(c01(1.0 - r.v[F_same_srv] + g.next_range(-0.03, 0.03)));
    r.v[F_dh_same_srv] = r2(c01(r.v[F_same_srv] + g.next_range(-0.03, 0.03)));
    r.v[F_dh_diff_srv] = r2(c01(r.v[F_diff_srv] + g.next_range(-0.03, 0.03)));
    r.v[F_dh_srv_count] = std::round(r.v[F_dh_count] * g.next_range(0.72, 0.97));
    r.v[F_num_root] = 2.0 * r.v[F_compromised] + (u2r ? ui(g, 1, 3) : 0);
}

// Largest-remainder apportionment of the per-10000 mix to n records.
std::vector<std::size_t> apportion(std::size_t n) {
    constexpr std::size_t n_classes = std::size(kMix);
    std::vector<std::size_t> counts(n_classes);
    std::vector<std::pair<double, std::size_t>> remainders(n_classes);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < n_classes; ++i) {
        double exact = static_cast<double>(kMix[i].weight) * static_cast<double>(n) / 10000.0;
        counts[i] = static_cast<std::size_t>(exact);
        assigned += counts[i];
        remainders[i] = {exact - std::floor(exact), i};
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
        counts[remainders[k % n_classes].second] += 1;
    }
    return counts;
}

// Evenly spaced index picks with collision avoidance, so the contradictory
// record pairs are spread across the dataset.
std::size_t pick_spread(const std::vector<std::size_t>& pool, std::size_t i, std::size_t count,
                        std::unordered_set<std::size_t>& used) {
    std::size_t at = (i + 1) * pool.size() / (count + 2);
    for (std::size_t probe = 0; probe < pool.size(); ++probe) {
        std::size_t idx = pool[(at + probe) % pool.size()];
        if (used.insert(idx).second) return idx;
    }
    throw ConsistencyError("twin pool exhausted");
}

} // namespace

Dataset synth_kdd99(std::size_t n, std::uint64_t seed, const LabelScheme& scheme) {
    if (n < 20) throw ConfigError("synth_kdd99: need at least 20 records");

    std::vector<std::size_t> counts = apportion(n);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < std::size(kMix); ++i) {
        labels.insert(labels.end(), counts[i], kMix[i].label);
    }
    Rng order_rng(derive_seed(seed, SeedRole::synth, 1));
    order_rng.shuffle(labels);

    Rng g(derive_seed(seed, SeedRole::synth, 2));
    std::vector<Rec> recs(n);
    for (std::size_t r = 0; r < n; ++r) {
        fill_record(labels[r], recs[r], g);
    }

    // A size-proportional error floor built from contradictory duplicates.
    // One canonical flood vector is stamped onto a block of flood records
    // plus a few normal records, and one canonical normal vector onto a block
    // of normal records plus a few flood records. Identical inputs with
    // conflicting labels are irreducible for any classifier, so the error
    // floor, the false-alarm rate, and the ranking quality of every model sit
    // at realistic, nonzero levels. Because the minority labels share their
    // exact vector with a five-times-larger majority block, no model can
    // carve a wrong-label region around them either — each contradiction
    // costs exactly one test error. Heavy record duplication is a hallmark
    // of this traffic format anyway.
    std::vector<std::size_t> normal_idx;
    std::vector<std::size_t> neptune_idx;
    for (std::size_t r = 0; r < n; ++r) {
        if (labels[r] == "normal") normal_idx.push_back(r);
        else if (labels[r] == "neptune") neptune_idx.push_back(r);
    }
    std::size_t fp_twins = static_cast<std::size_t>(std::llround(static_cast<double>(n) * 0.0006));
    std::size_t fn_twins = static_cast<std::size_t>(std::llround(static_cast<double>(n) * 0.0012));
    fp_twins = std::min(fp_twins, normal_idx.size() / 8);
    fn_twins = std::min(fn_twins, neptune_idx.size() / 8);
    if (fp_twins > 0 && fn_twins > 0) {
        Rec canon_attack;
        Rec canon_normal;
        fill_record("neptune", canon_attack, g);
        fill_record("normal", canon_normal, g);
        std::unordered_set<std::size_t> used;
        std::size_t attack_block = 5 * fp_twins;
        std::size_t normal_block = 5 * fn_twins;
        std::size_t normal_picks = fp_twins + normal_block;
        std::size_t neptune_picks = fn_twins + attack_block;
        for (std::size_t i = 0; i < normal_picks; ++i) {
            std::size_t dst = pick_spread(normal_idx, i, normal_picks, used);
            recs[dst] = i < fp_twins ? canon_attack : canon_normal;
        }
        for (std::size_t i = 0; i < neptune_picks; ++i) {
            std::size_t dst = pick_spread(neptune_idx, i, neptune_picks, used);
            recs[dst] = i < fn_twins ? canon_normal : canon_attack;
        }
    }

    Dataset data;
    data.schema = kdd99::schema();
    data.scheme = scheme;
    data.n_records = n;
    data.columns.resize(data.schema.size());
    for (const FeatureMeta& meta : data.schema) {
        Column& col = data.columns[static_cast<std::size_t>(meta.index)];
        col.kind = meta.kind;
        if (meta.kind == FeatureKind::categorical) {
            col.codes.reserve(n);
        } else {
            col.values.reserve(n);
        }
    }
    auto intern = [](Column& col, const std::string& text) {
        for (std::size_t c = 0; c < col.categories.size(); ++c) {
            if (col.categories[c] == text) {
                col.codes.push_back(static_cast<std::int32_t>(c));
                return;
            }
        }
        col.categories.push_back(text);
        col.codes.push_back(static_cast<std::int32_t>(col.categories.size() - 1));
    };
    data.labels.reserve(n);
    data.classes.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        const Rec& rec = recs[r];
        for (std::size_t f = 0; f < data.schema.size(); ++f) {
            Column& col = data.columns[f];
            if (f == F_proto) intern(col, rec.proto);
            else if (f == F_service) intern(col, rec.service);
            else if (f == F_flag) intern(col, rec.flag);
            else col.values.push_back(rec.v[f]);
        }
        data.labels.push_back(labels[r]);
        data.classes.push_back(scheme.class_of(labels[r]));
    }
    data.check_invariants();
    return data;
}

} // namespace netgauntlet
