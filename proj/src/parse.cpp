#include "adgraph/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adgraph/common.hpp"

namespace adgraph {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    for (std::string& f : fields) {
        while (!f.empty() && std::isspace(static_cast<unsigned char>(f.front()))) f.erase(f.begin());
        while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
    }
    return fields;
}

bool parse_int(const std::string& s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::ifstream open_or_fail(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_data("cannot open file: " + path);
    return in;
}

}  // namespace

std::vector<EventRecord> parse_events(const std::string& path, const ParseOptions& opts,
                                      ParseReport& report) {
    std::ifstream in = open_or_fail(path);
    std::string line;
    if (!std::getline(in, line)) fail_data("empty events file: " + path);
    auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "u" || header[1] != "v" || header[2] != "t" ||
        header[3] != "kind")
        fail_data("events file " + path + ": expected header u,v,t,kind[,prob]");
    const bool has_prob = header.size() >= 5 && header[4] == "prob";

    std::vector<EventRecord> events;
    int line_no = 1;
    int data_rows = 0;
    auto reject = [&](int ln, const std::string& why) { report.rejected.emplace_back(ln, why); };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ++data_rows;
        auto fields = split_csv_line(line);
        if (fields.size() < 4) {
            reject(line_no, "too few columns");
            continue;
        }
        EventRecord ev;
        if (!parse_int(fields[0], ev.u) || !parse_int(fields[1], ev.v)) {
            reject(line_no, "non-integer node id");
            continue;
        }
        if (!parse_double(fields[2], ev.t) || !std::isfinite(ev.t)) {
            reject(line_no, "bad timestamp");
            continue;
        }
        if (fields[3] == opts.assoc_token) {
            ev.kind = EventKind::Association;
        } else if (fields[3] == opts.comm_token) {
            ev.kind = EventKind::Communication;
        } else {
            reject(line_no, "unknown kind token '" + fields[3] + "'");
            continue;
        }
        if (ev.u == ev.v) {
            reject(line_no, "self-event (u == v)");
            continue;
        }
        if (ev.u < 0 || ev.v < 0 ||
            (opts.n_nodes && (ev.u >= *opts.n_nodes || ev.v >= *opts.n_nodes))) {
            reject(line_no, "node id out of range");
            continue;
        }
        if (has_prob && fields.size() >= 5 && !fields[4].empty()) {
            double prob = 0.0;
            if (!parse_double(fields[4], prob)) {
                reject(line_no, "bad prob value");
                continue;
            }
            if (prob < opts.min_prob) {
                ++report.filtered;
                continue;
            }
        }
        events.push_back(ev);
    }

    if (data_rows > 0 &&
        static_cast<double>(report.rejected.size()) > 0.10 * static_cast<double>(data_rows)) {
        std::ostringstream msg;
        msg << path << ": " << report.rejected.size() << " of " << data_rows
            << " rows rejected (>10%); first offenders:";
        for (std::size_t i = 0; i < report.rejected.size() && i < 5; ++i)
            msg << " line " << report.rejected[i].first << " (" << report.rejected[i].second << ")";
        fail_data(msg.str());
    }
    report.accepted += static_cast<int>(events.size());

    bool sorted = std::is_sorted(events.begin(), events.end(),
                                 [](const EventRecord& a, const EventRecord& b) { return a.t < b.t; });
    if (!sorted) {
        report.warnings.push_back(path + ": rows out of time order; sorted stably by t");
        std::stable_sort(events.begin(), events.end(),
                         [](const EventRecord& a, const EventRecord& b) { return a.t < b.t; });
    }
    if (!events.empty()) {
        if (events.front().t < 0.0)
            fail_data(path + ": negative timestamps after sort");
        const double epoch = events.front().t;
        if (epoch > 0.0)
            for (EventRecord& ev : events) ev.t -= epoch;
    }
    return events;
}

std::vector<std::pair<int, int>> parse_edges(const std::string& path, const ParseOptions& opts,
                                             ParseReport& report) {
    std::ifstream in = open_or_fail(path);
    std::string line;
    if (!std::getline(in, line)) fail_data("empty edges file: " + path);
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "u" || header[1] != "v")
        fail_data("edges file " + path + ": expected header u,v");

    std::vector<std::pair<int, int>> edges;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        int a = 0, b = 0;
        if (fields.size() < 2 || !parse_int(fields[0], a) || !parse_int(fields[1], b)) {
            report.rejected.emplace_back(line_no, "bad edge row");
            continue;
        }
        if (a == b) {
            report.rejected.emplace_back(line_no, "self-loop edge");
            continue;
        }
        if (a < 0 || b < 0 || (opts.n_nodes && (a >= *opts.n_nodes || b >= *opts.n_nodes))) {
            report.rejected.emplace_back(line_no, "edge endpoint out of range");
            continue;
        }
        edges.emplace_back(a, b);
    }
    return edges;
}

std::pair<std::vector<EventRecord>, std::vector<EventRecord>>
split_chronological(const std::vector<EventRecord>& events, double boundary_t,
                    std::vector<std::string>* warnings) {
    if (!std::is_sorted(events.begin(), events.end(),
                        [](const EventRecord& a, const EventRecord& b) { return a.t < b.t; }))
        fail_data("split_chronological: events not time-sorted");
    if (warnings && !events.empty() &&
        (boundary_t < events.front().t || boundary_t > events.back().t))
        warnings->push_back("split boundary outside event time range; one side is empty");

    std::vector<EventRecord> train, test;
    for (const EventRecord& ev : events)
        (ev.t < boundary_t ? train : test).push_back(ev);
    return {std::move(train), std::move(test)};
}

Dataset assemble_dataset(std::vector<EventRecord> events,
                         std::vector<std::pair<int, int>> initial_edges, double boundary_t,
                         const ParseOptions& opts, ParseReport& report) {
    Dataset ds;
    if (opts.n_nodes) {
        ds.n_nodes = *opts.n_nodes;
    } else {
        int max_id = -1;
        for (const EventRecord& ev : events) max_id = std::max({max_id, ev.u, ev.v});
        for (auto [a, b] : initial_edges) max_id = std::max({max_id, a, b});
        ds.n_nodes = max_id + 1;
    }
    ds.initial_associations = std::move(initial_edges);
    auto [train, test] = split_chronological(events, boundary_t, &report.warnings);
    ds.train = std::move(train);
    ds.test = std::move(test);
    ds.time_scale = mean_inter_event_interval(ds.train);
    validate_dataset(ds);
    return ds;
}

void write_events_csv(const std::string& path, const std::vector<EventRecord>& events,
                      const ParseOptions& opts) {
    std::ofstream out(path);
    if (!out) fail_data("cannot write file: " + path);
    out << "u,v,t,kind\n";
    out.precision(17);
    for (const EventRecord& ev : events)
        out << ev.u << ',' << ev.v << ',' << ev.t << ','
            << (ev.kind == EventKind::Association ? opts.assoc_token : opts.comm_token) << '\n';
    if (!out) fail_data("write failed: " + path);
}

void write_edges_csv(const std::string& path, const std::vector<std::pair<int, int>>& edges) {
    std::ofstream out(path);
    if (!out) fail_data("cannot write file: " + path);
    out << "u,v\n";
    for (auto [a, b] : edges) out << a << ',' << b << '\n';
    if (!out) fail_data("write failed: " + path);
}

}  // namespace adgraph
