#include "pqmap/map.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

namespace pqmap {

const char* map_error_kind_name(MapErrorKind kind) {
    switch (kind) {
        case MapErrorKind::BadHeader: return "bad_header";
        case MapErrorKind::BadCount: return "bad_count";
        case MapErrorKind::BadLine: return "bad_line";
        case MapErrorKind::DartOutOfRange: return "dart_out_of_range";
        case MapErrorKind::DartRepeated: return "dart_repeated";
        case MapErrorKind::DartMissing: return "dart_missing";
        case MapErrorKind::TwinViolation: return "twin_violation";
        case MapErrorKind::Disconnected: return "disconnected";
        case MapErrorKind::EulerViolation: return "euler_violation";
        case MapErrorKind::OuterOutOfRange: return "outer_out_of_range";
        case MapErrorKind::ZeroDegreeVertex: return "zero_degree_vertex";
        case MapErrorKind::BadAngle: return "bad_angle";
        case MapErrorKind::InvalidArgument: return "invalid_argument";
        case MapErrorKind::PreconditionFailed: return "precondition_failed";
        case MapErrorKind::TheoremViolation: return "theorem_violation";
    }
    return "unknown";
}

namespace {

// Rotates a cyclic dart list so the minimal dart comes first.
void canonicalize_rotation(std::vector<DartId>& rot) {
    if (rot.empty()) return;
    auto it = std::min_element(rot.begin(), rot.end());
    std::rotate(rot.begin(), it, rot.end());
}

struct Structure {
    int dart_count = 0;
    std::vector<VertexId> origin;  // by dart
    std::vector<int> rot_pos;
    bool ok = false;
    MapErrorKind fail_kind = MapErrorKind::BadLine;
    std::string fail_detail;
};

Structure analyze_structure(const std::vector<std::vector<DartId>>& rotations) {
    Structure s;
    std::size_t total = 0;
    for (const auto& rot : rotations) total += rot.size();
    if (total % 2 != 0) {
        s.fail_kind = MapErrorKind::BadCount;
        s.fail_detail = "odd number of darts (" + std::to_string(total) + ")";
        return s;
    }
    s.dart_count = static_cast<int>(total);
    s.origin.assign(total, -1);
    s.rot_pos.assign(total, -1);
    for (VertexId v = 0; v < static_cast<int>(rotations.size()); ++v) {
        const auto& rot = rotations[v];
        for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
            DartId d = rot[i];
            if (d < 0 || d >= s.dart_count) {
                s.fail_kind = MapErrorKind::DartOutOfRange;
                s.fail_detail = "dart " + std::to_string(d) + " outside [0, " +
                                std::to_string(s.dart_count) + ")";
                return s;
            }
            if (s.origin[d] != -1) {
                s.fail_kind = MapErrorKind::DartRepeated;
                s.fail_detail = "dart " + std::to_string(d) + " appears twice";
                return s;
            }
            s.origin[d] = v;
            s.rot_pos[d] = i;
        }
    }
    // All darts in range and none repeated, |darts| = 2E: the twin pairing
    // d ^ 1 is total, so twin violations can only coexist with repeats or
    // holes; report them as the more specific kind.
    for (DartId d = 0; d < s.dart_count; ++d) {
        if (s.origin[d] == -1) {
            if (s.origin[twin(d)] != -1) {
                s.fail_kind = MapErrorKind::TwinViolation;
                s.fail_detail = "twin involution violated: dart " + std::to_string(twin(d)) +
                                " present without its twin " + std::to_string(d);
            } else {
                s.fail_kind = MapErrorKind::DartMissing;
                s.fail_detail = "dart " + std::to_string(d) + " missing";
            }
            return s;
        }
    }
    s.ok = true;
    return s;
}

bool skeleton_connected(const std::vector<std::vector<DartId>>& rotations,
                        const std::vector<VertexId>& origin) {
    const int v_count = static_cast<int>(rotations.size());
    if (v_count == 0) return false;
    std::vector<char> seen(v_count, 0);
    std::deque<VertexId> queue{0};
    seen[0] = 1;
    int visited = 1;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (DartId d : rotations[v]) {
            VertexId w = origin[twin(d)];
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                queue.push_back(w);
            }
        }
    }
    return visited == v_count;
}

int count_phi_orbits(const std::vector<std::vector<DartId>>& rotations,
                     const Structure& s) {
    std::vector<char> seen(s.dart_count, 0);
    int orbits = 0;
    for (DartId d0 = 0; d0 < s.dart_count; ++d0) {
        if (seen[d0]) continue;
        ++orbits;
        DartId d = d0;
        do {
            seen[d] = 1;
            DartId t = twin(d);
            const auto& rot = rotations[s.origin[t]];
            d = rot[(s.rot_pos[t] + 1) % rot.size()];
        } while (d != d0);
    }
    return orbits;
}

}  // namespace

ValidationReport validate_rotation_system(const std::vector<std::vector<DartId>>& rotations,
                                          DartId outer_dart) {
    ValidationReport report;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        report.checks.push_back({name, pass, detail});
    };

    Structure s = analyze_structure(rotations);
    if (!s.ok) {
        bool twin_fail = s.fail_kind == MapErrorKind::TwinViolation;
        bool partition_fail = !twin_fail;
        add("twin_involution", !twin_fail, twin_fail ? s.fail_detail : "");
        add("rotation_partition", !partition_fail, partition_fail ? s.fail_detail : "");
        add("connectivity", false, "skipped: structure invalid");
        add("euler", false, "skipped: structure invalid");
        add("outer_designation", false, "skipped: structure invalid");
        add("vertex_degrees", false, "skipped: structure invalid");
        return report;
    }
    add("twin_involution", true);
    add("rotation_partition", true);

    const int v_count = static_cast<int>(rotations.size());
    const int e_count = s.dart_count / 2;
    bool connected = skeleton_connected(rotations, s.origin);
    add("connectivity", connected, connected ? "" : "1-skeleton is not connected");

    int f_all = count_phi_orbits(rotations, s);
    bool euler = v_count - e_count + f_all == 2;
    add("euler", euler,
        euler ? ""
              : "V - E + F_all = " + std::to_string(v_count - e_count + f_all) + ", expected 2");

    bool outer_ok = s.dart_count == 0 ? outer_dart == kNoDart
                                      : (outer_dart >= 0 && outer_dart < s.dart_count);
    add("outer_designation", outer_ok,
        outer_ok ? "" : "outer dart " + std::to_string(outer_dart) + " out of range");

    bool degrees_ok = true;
    std::string degree_detail;
    if (v_count > 1 || e_count > 0) {
        for (VertexId v = 0; v < v_count; ++v) {
            if (rotations[v].empty()) {
                degrees_ok = false;
                degree_detail = "vertex " + std::to_string(v) + " has degree 0";
                break;
            }
        }
    }
    add("vertex_degrees", degrees_ok, degree_detail);
    return report;
}

PlanarMap PlanarMap::build(std::vector<std::vector<DartId>> rotations, DartId outer_dart) {
    PlanarMap m;
    for (auto& rot : rotations) canonicalize_rotation(rot);
    m.rotations_ = std::move(rotations);
    m.outer_dart_ = outer_dart;
    m.finalize();
    return m;
}

void PlanarMap::finalize() {
    Structure s = analyze_structure(rotations_);
    if (!s.ok) throw MapError(s.fail_kind, s.fail_detail);
    dart_count_ = s.dart_count;
    dart_origin_ = std::move(s.origin);
    rot_pos_ = std::move(s.rot_pos);

    const int v_count = vertex_count();
    if (v_count == 0) throw MapError(MapErrorKind::BadCount, "map has no vertices");
    if (v_count > 1 || edge_count() > 0) {
        for (VertexId v = 0; v < v_count; ++v) {
            if (rotations_[v].empty())
                throw MapError(MapErrorKind::ZeroDegreeVertex,
                               "vertex " + std::to_string(v) + " has degree 0");
        }
    }
    if (!skeleton_connected(rotations_, dart_origin_))
        throw MapError(MapErrorKind::Disconnected, "1-skeleton is not connected");

    if (dart_count_ == 0) {
        if (outer_dart_ != kNoDart)
            throw MapError(MapErrorKind::OuterOutOfRange, "edgeless map cannot designate outer");
        mu_.assign(v_count, 0);
        return;
    }
    if (outer_dart_ < 0 || outer_dart_ >= dart_count_)
        throw MapError(MapErrorKind::OuterOutOfRange,
                       "outer dart " + std::to_string(outer_dart_) + " out of range");

    // Trace phi-orbits; the orbit of outer_dart_ is the outer face, the rest
    // are bounded faces ordered by minimal dart.
    dart_face_.assign(dart_count_, -3);
    std::vector<std::vector<DartId>> orbits;
    for (DartId d0 = 0; d0 < dart_count_; ++d0) {
        if (dart_face_[d0] != -3) continue;
        std::vector<DartId> walk;
        DartId d = d0;
        do {
            walk.push_back(d);
            dart_face_[d] = -4;  // provisional
            d = face_next(d);
        } while (d != d0);
        orbits.push_back(std::move(walk));
    }
    const int f_all = static_cast<int>(orbits.size());
    if (vertex_count() - edge_count() + f_all != 2)
        throw MapError(MapErrorKind::EulerViolation,
                       "V - E + F_all = " +
                           std::to_string(vertex_count() - edge_count() + f_all) +
                           ", expected 2 (genus 0)");

    face_walks_.clear();
    for (auto& walk : orbits) {
        bool is_outer = std::find(walk.begin(), walk.end(), outer_dart_) != walk.end();
        if (is_outer) {
            outer_orbit_ = std::move(walk);
        } else {
            face_walks_.push_back(std::move(walk));
        }
    }
    for (FaceId f = 0; f < face_count(); ++f)
        for (DartId d : face_walks_[f]) dart_face_[d] = f;
    for (DartId d : outer_orbit_) dart_face_[d] = kOuterFace;

    // Boundary path: reverse the outer orbit and twin every dart, yielding
    // the walk that keeps the map on its left.
    boundary_path_.clear();
    boundary_path_.reserve(outer_orbit_.size());
    for (auto it = outer_orbit_.rbegin(); it != outer_orbit_.rend(); ++it)
        boundary_path_.push_back(twin(*it));

    mu_.assign(v_count, 0);
    for (DartId d : boundary_path_) ++mu_[dart_origin_[d]];

    exterior_face_.assign(face_count(), 0);
    for (DartId d : outer_orbit_) {
        FaceId f = dart_face_[twin(d)];
        if (f != kOuterFace) exterior_face_[f] = 1;
    }
}

DartId PlanarMap::rotation_next(DartId d) const {
    const auto& rot = rotations_[dart_origin_[d]];
    return rot[(rot_pos_[d] + 1) % rot.size()];
}

DartId PlanarMap::rotation_prev(DartId d) const {
    const auto& rot = rotations_[dart_origin_[d]];
    return rot[(rot_pos_[d] + rot.size() - 1) % rot.size()];
}

PlanarMap PlanarMap::build_from_orbits(const std::vector<std::vector<DartId>>& bounded_walks,
                                       const std::vector<DartId>& outer_walk,
                                       const std::vector<VertexId>& origin,
                                       int vertex_count) {
    const int dart_count = static_cast<int>(origin.size());
    std::vector<DartId> phi(dart_count, kNoDart);
    auto feed = [&](const std::vector<DartId>& walk) {
        for (std::size_t i = 0; i < walk.size(); ++i) {
            DartId d = walk[i];
            DartId next = walk[(i + 1) % walk.size()];
            if (d < 0 || d >= dart_count || phi[d] != kNoDart)
                throw MapError(MapErrorKind::InvalidArgument,
                               "face walks do not partition the darts (dart " +
                                   std::to_string(d) + ")");
            phi[d] = next;
        }
    };
    for (const auto& walk : bounded_walks) feed(walk);
    feed(outer_walk);
    for (DartId d = 0; d < dart_count; ++d)
        if (phi[d] == kNoDart)
            throw MapError(MapErrorKind::InvalidArgument,
                           "dart " + std::to_string(d) + " not covered by any walk");

    // sigma(e) = phi(twin(e)); its cycles are the vertices.
    std::vector<std::vector<DartId>> rotations(vertex_count);
    std::vector<char> placed(dart_count, 0);
    for (DartId d0 = 0; d0 < dart_count; ++d0) {
        if (placed[d0]) continue;
        VertexId v = origin[d0];
        if (v < 0 || v >= vertex_count)
            throw MapError(MapErrorKind::InvalidArgument, "dart origin out of range");
        if (!rotations[v].empty())
            throw MapError(MapErrorKind::InvalidArgument,
                           "vertex " + std::to_string(v) + " has several rotation cycles");
        DartId d = d0;
        do {
            if (origin[d] != v)
                throw MapError(MapErrorKind::InvalidArgument,
                               "walks inconsistent with dart origins at vertex " +
                                   std::to_string(v));
            placed[d] = 1;
            rotations[v].push_back(d);
            d = phi[twin(d)];
        } while (d != d0);
    }

    DartId outer = outer_walk.empty() ? kNoDart
                                      : *std::min_element(outer_walk.begin(), outer_walk.end());
    return build(std::move(rotations), outer);
}

// --- breadth-first machinery -------------------------------------------

std::vector<int> bfs_distances(const PlanarMap& m, const std::vector<VertexId>& sources) {
    std::vector<int> dist(m.vertex_count(), -1);
    std::deque<VertexId> queue;
    for (VertexId s : sources) {
        if (dist[s] == -1) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (DartId d : m.rotation(v)) {
            VertexId w = m.head(d);
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int radius(const PlanarMap& m) {
    std::vector<VertexId> exterior;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.is_exterior_vertex(v)) exterior.push_back(v);
    if (exterior.empty()) return 0;  // edgeless map
    auto dist = bfs_distances(m, exterior);
    return *std::max_element(dist.begin(), dist.end());
}

std::vector<VertexId> ball(const PlanarMap& m, VertexId o, int d) {
    auto dist = bfs_from(m, o);
    std::vector<VertexId> result;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (dist[v] >= 0 && dist[v] <= d) result.push_back(v);
    return result;
}

std::optional<std::pair<VertexId, int>> ball_growth_violation(const PlanarMap& m, int max_d) {
    int b = 0;
    for (VertexId v = 0; v < m.vertex_count(); ++v) b = std::max(b, m.vertex_degree(v));
    if (b == 0) return std::nullopt;
    for (VertexId o = 0; o < m.vertex_count(); ++o) {
        auto dist = bfs_from(m, o);
        std::vector<int> count_at(max_d + 1, 0);
        for (int x : dist)
            if (x >= 0 && x <= max_d) ++count_at[x];
        BigInt size = 0;
        BigInt power = 1;
        for (int d = 0; d <= max_d; ++d) {
            size += count_at[d];
            if (d > 0) power *= b;
            if (size > power + 1) return std::make_pair(o, d);
        }
    }
    return std::nullopt;
}

// --- file format ---------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

long parse_int(const std::string& tok, int line_no, MapErrorKind kind) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw MapError(kind, "expected integer, got '" + tok + "'", line_no);
    return value;
}

Rational parse_rational_token(const std::string& tok, int line_no) {
    auto slash = tok.find('/');
    if (slash == std::string::npos)
        return Rational(BigInt(parse_int(tok, line_no, MapErrorKind::BadAngle)));
    long num = parse_int(tok.substr(0, slash), line_no, MapErrorKind::BadAngle);
    long den = parse_int(tok.substr(slash + 1), line_no, MapErrorKind::BadAngle);
    if (den == 0) throw MapError(MapErrorKind::BadAngle, "zero denominator", line_no);
    return Rational(BigInt(num), BigInt(den));
}

}  // namespace

ParsedFile parse_pqm(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    long v_count = -1, e_count = -1;
    std::vector<std::vector<DartId>> rotations;
    std::vector<char> rot_seen;
    DartId outer = kNoDart;
    bool outer_seen = false;
    std::vector<std::pair<DartId, Rational>> angle_lines;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tokens = tokenize(raw);
        if (tokens.empty()) continue;

        if (!header_seen) {
            if (tokens.size() != 2 || tokens[0] != "pqm" || tokens[1] != "1")
                throw MapError(MapErrorKind::BadHeader, "expected 'pqm 1' header", line_no);
            header_seen = true;
            continue;
        }
        const std::string& key = tokens[0];
        if (key == "vertices") {
            if (tokens.size() != 2)
                throw MapError(MapErrorKind::BadCount, "vertices line needs one integer", line_no);
            v_count = parse_int(tokens[1], line_no, MapErrorKind::BadCount);
            if (v_count <= 0)
                throw MapError(MapErrorKind::BadCount, "vertex count must be positive", line_no);
            rotations.assign(v_count, {});
            rot_seen.assign(v_count, 0);
        } else if (key == "edges") {
            if (tokens.size() != 2)
                throw MapError(MapErrorKind::BadCount, "edges line needs one integer", line_no);
            e_count = parse_int(tokens[1], line_no, MapErrorKind::BadCount);
            if (e_count < 0)
                throw MapError(MapErrorKind::BadCount, "edge count must be non-negative", line_no);
        } else if (key == "rot") {
            if (v_count < 0 || e_count < 0)
                throw MapError(MapErrorKind::BadLine, "rot before vertices/edges", line_no);
            if (tokens.size() < 2)
                throw MapError(MapErrorKind::BadLine, "rot line needs a vertex", line_no);
            std::string vt = tokens[1];
            if (!vt.empty() && vt.back() == ':') vt.pop_back();
            long v = parse_int(vt, line_no, MapErrorKind::BadLine);
            if (v < 0 || v >= v_count)
                throw MapError(MapErrorKind::BadLine, "vertex " + vt + " out of range", line_no);
            if (rot_seen[v])
                throw MapError(MapErrorKind::BadLine, "duplicate rot line for vertex " + vt,
                               line_no);
            rot_seen[v] = 1;
            std::size_t i = 2;
            if (i < tokens.size() && tokens[i] == ":") ++i;
            for (; i < tokens.size(); ++i) {
                long d = parse_int(tokens[i], line_no, MapErrorKind::BadLine);
                if (d < 0 || d >= 2 * e_count)
                    throw MapError(MapErrorKind::DartOutOfRange,
                                   "dart " + std::to_string(d) + " outside [0, " +
                                       std::to_string(2 * e_count) + ")",
                                   line_no);
                rotations[v].push_back(static_cast<DartId>(d));
            }
        } else if (key == "outer") {
            if (tokens.size() != 2)
                throw MapError(MapErrorKind::BadLine, "outer line needs one dart", line_no);
            long d = parse_int(tokens[1], line_no, MapErrorKind::OuterOutOfRange);
            if (e_count < 0)
                throw MapError(MapErrorKind::BadLine, "outer before edges", line_no);
            if (e_count == 0 ? d != -1 : (d < 0 || d >= 2 * e_count))
                throw MapError(MapErrorKind::OuterOutOfRange,
                               "outer dart " + std::to_string(d) + " out of range", line_no);
            outer = static_cast<DartId>(d);
            outer_seen = true;
        } else if (key == "angle") {
            if (tokens.size() != 3)
                throw MapError(MapErrorKind::BadAngle, "angle line needs dart and value", line_no);
            long d = parse_int(tokens[1], line_no, MapErrorKind::BadAngle);
            if (e_count < 0 || d < 0 || d >= 2 * e_count)
                throw MapError(MapErrorKind::BadAngle,
                               "angle dart " + std::to_string(d) + " out of range", line_no);
            Rational coeff = parse_rational_token(tokens[2], line_no);
            if (coeff < 0)
                throw MapError(MapErrorKind::BadAngle, "angles must be non-negative", line_no);
            angle_lines.emplace_back(static_cast<DartId>(d), coeff);
        } else {
            throw MapError(MapErrorKind::BadLine, "unknown directive '" + key + "'", line_no);
        }
    }
    if (!header_seen) throw MapError(MapErrorKind::BadHeader, "empty file", 0);
    if (v_count < 0 || e_count < 0)
        throw MapError(MapErrorKind::BadCount, "missing vertices/edges line", line_no);
    if (!outer_seen) throw MapError(MapErrorKind::BadLine, "missing outer line", line_no);

    std::size_t total = 0;
    for (const auto& rot : rotations) total += rot.size();
    if (total != static_cast<std::size_t>(2 * e_count)) {
        // Identify the specific defect for the error kind.
        std::vector<char> seen(2 * e_count, 0);
        for (const auto& rot : rotations)
            for (DartId d : rot) {
                if (seen[d])
                    throw MapError(MapErrorKind::DartRepeated,
                                   "dart " + std::to_string(d) + " appears twice", 0);
                seen[d] = 1;
            }
        for (DartId d = 0; d < 2 * e_count; ++d) {
            if (!seen[d]) {
                if (seen[twin(d)])
                    throw MapError(MapErrorKind::TwinViolation,
                                   "twin involution violated: dart " + std::to_string(twin(d)) +
                                       " present without its twin " + std::to_string(d),
                                   0);
                throw MapError(MapErrorKind::DartMissing, "dart " + std::to_string(d) + " missing",
                               0);
            }
        }
    } else {
        std::vector<char> seen(2 * e_count, 0);
        bool repeat = false;
        DartId repeated = -1;
        for (const auto& rot : rotations)
            for (DartId d : rot) {
                if (seen[d] && !repeat) {
                    repeat = true;
                    repeated = d;
                }
                seen[d] = 1;
            }
        if (repeat) {
            // A repeat with the right total implies some dart is missing;
            // prefer the twin-violation kind when the hole is a lone twin.
            for (DartId d = 0; d < 2 * e_count; ++d)
                if (!seen[d] && seen[twin(d)])
                    throw MapError(MapErrorKind::TwinViolation,
                                   "twin involution violated: dart " + std::to_string(twin(d)) +
                                       " present without its twin " + std::to_string(d),
                                   0);
            throw MapError(MapErrorKind::DartRepeated,
                           "dart " + std::to_string(repeated) + " appears twice", 0);
        }
    }

    ParsedFile file{PlanarMap::build(std::move(rotations), outer), std::move(angle_lines)};
    if (file.map.vertex_count() != v_count)
        throw MapError(MapErrorKind::BadCount, "vertex count mismatch", 0);
    return file;
}

std::string serialize_pqm(const PlanarMap& m,
                          const std::vector<std::pair<DartId, Rational>>& angle_lines) {
    std::ostringstream out;
    out << "pqm 1\n";
    out << "vertices " << m.vertex_count() << "\n";
    out << "edges " << m.edge_count() << "\n";
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        out << "rot " << v << ":";
        for (DartId d : m.rotation(v)) out << " " << d;
        out << "\n";
    }
    DartId outer = m.outer_dart();
    if (outer != kNoDart)
        outer = *std::min_element(m.outer_orbit().begin(), m.outer_orbit().end());
    out << "outer " << outer << "\n";
    auto sorted = angle_lines;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [dart, coeff] : sorted) {
        out << "angle " << dart << " " << numerator(coeff) << "/" << denominator(coeff) << "\n";
    }
    return out.str();
}

// --- weak dual -----------------------------------------------------------

PlanarMap weak_dual(const PlanarMap& m) {
    if (m.face_count() == 0)
        throw MapError(MapErrorKind::PreconditionFailed, "map has no bounded faces");

    // Dual darts exist for darts of interior edges (bounded faces on both
    // sides); the dual dart of d leaves the dual vertex face_of(d).
    std::vector<int> dual_dart(m.dart_count(), -1);
    int next_dual_edge = 0;
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        DartId d = dart_of(e);
        if (m.on_outer(d) || m.on_outer(twin(d))) continue;
        dual_dart[d] = 2 * next_dual_edge;
        dual_dart[twin(d)] = 2 * next_dual_edge + 1;
        ++next_dual_edge;
    }
    if (next_dual_edge == 0) {
        if (m.face_count() > 1)
            throw MapError(MapErrorKind::Disconnected, "weak dual is disconnected");
        return PlanarMap::build({{}}, kNoDart);
    }

    // The dual rotation at a face lists the interior-edge crossings in the
    // face walk's order; the dual face around an interior vertex v collects
    // the crossings whose primal dart leaves v, and the one remaining orbit,
    // through crossings with exterior origins, is the dual outer face.
    std::vector<std::vector<DartId>> rotations(m.face_count());
    for (FaceId f = 0; f < m.face_count(); ++f)
        for (DartId d : m.face_walk(f))
            if (dual_dart[d] != -1) rotations[f].push_back(dual_dart[d]);

    DartId outer = kNoDart;
    for (DartId d = 0; d < m.dart_count() && outer == kNoDart; ++d)
        if (dual_dart[d] != -1 && m.is_exterior_vertex(m.origin(d))) outer = dual_dart[d];
    if (outer == kNoDart)
        throw MapError(MapErrorKind::Disconnected, "no crossing reaches the boundary");

    PlanarMap dual = PlanarMap::build(std::move(rotations), outer);
    // Sanity: bounded dual faces biject with interior vertices.
    int interior_vertices = 0;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (!m.is_exterior_vertex(v)) ++interior_vertices;
    if (dual.face_count() != interior_vertices)
        throw MapError(MapErrorKind::TheoremViolation,
                       "dual face count does not match interior vertices");
    return dual;
}

}  // namespace pqmap
