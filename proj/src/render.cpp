#include "pqmap/render.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <vector>

namespace pqmap {

namespace {

struct Highlights {
    std::vector<char> face;
    std::vector<char> vertex;
};

Highlights highlights_for(const PlanarMap& m, const std::optional<PQParams>& pq) {
    Highlights h;
    h.face.assign(m.face_count(), 0);
    h.vertex.assign(m.vertex_count(), 0);
    if (!pq) return h;
    const int p = pq->p();
    const int q = pq->q();
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (m.face_degree(f) != p) h.face[f] = 1;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (!m.is_exterior_vertex(v) && m.vertex_degree(v) != q) h.vertex[v] = 1;
    return h;
}

}  // namespace

std::string render_dot(const PlanarMap& m, const std::optional<PQParams>& pq) {
    auto h = highlights_for(m, pq);
    std::set<EdgeId> highlighted_edges;
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (h.face[f])
            for (DartId d : m.face_walk(f)) highlighted_edges.insert(edge_of(d));

    std::ostringstream out;
    out << "graph pqmap {\n";
    out << "  node [shape=circle, width=0.2];\n";
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        out << "  v" << v << " [label=\"" << v << "\"";
        if (h.vertex[v]) out << ", style=filled, fillcolor=red";
        if (m.is_exterior_vertex(v)) out << ", penwidth=2";
        out << "];\n";
    }
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        DartId d = dart_of(e);
        out << "  v" << m.origin(d) << " -- v" << m.head(d);
        if (highlighted_edges.count(e)) out << " [color=red, penwidth=2]";
        out << ";\n";
    }
    for (FaceId f = 0; f < m.face_count(); ++f) {
        out << "  // face " << f << " degree " << m.face_degree(f) << ":";
        for (DartId d : m.face_walk(f)) out << " " << m.origin(d);
        if (h.face[f]) out << " (non-flat)";
        out << "\n";
    }
    out << "}\n";
    return out.str();
}

RenderResult render_svg(const PlanarMap& m, const std::optional<PQParams>& pq) {
    const auto& boundary = m.boundary_path();
    std::set<VertexId> boundary_seen;
    for (DartId d : boundary)
        if (!boundary_seen.insert(m.origin(d)).second)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "SVG rendering requires a simple boundary");
    if (boundary.empty())
        throw MapError(MapErrorKind::PreconditionFailed, "SVG rendering needs edges");

    const int V = m.vertex_count();
    std::vector<double> x(V, 0.0), y(V, 0.0);
    std::vector<char> fixed(V, 0);
    const double radius = 100.0;
    const int nb = static_cast<int>(boundary.size());
    for (int i = 0; i < nb; ++i) {
        VertexId v = m.origin(boundary[i]);
        double angle = 2.0 * 3.14159265358979323846 * i / nb;
        x[v] = radius * std::cos(angle);
        y[v] = radius * std::sin(angle);
        fixed[v] = 1;
    }
    // Barycentric relaxation; exact solves are overkill for a picture.
    for (int iter = 0; iter < 100 * V + 500; ++iter) {
        double shift = 0.0;
        for (VertexId v = 0; v < V; ++v) {
            if (fixed[v] || m.vertex_degree(v) == 0) continue;
            double sx = 0.0, sy = 0.0;
            for (DartId d : m.rotation(v)) {
                sx += x[m.head(d)];
                sy += y[m.head(d)];
            }
            double nx = sx / m.vertex_degree(v);
            double ny = sy / m.vertex_degree(v);
            shift += std::abs(nx - x[v]) + std::abs(ny - y[v]);
            x[v] = nx;
            y[v] = ny;
        }
        if (shift < 1e-9) break;
    }

    // Degenerate layouts (coincident endpoints) fall back to DOT.
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        DartId d = dart_of(e);
        double dx = x[m.origin(d)] - x[m.head(d)];
        double dy = y[m.origin(d)] - y[m.head(d)];
        if (dx * dx + dy * dy < 1e-12) {
            RenderResult fallback;
            fallback.content = render_dot(m, pq);
            fallback.is_svg = false;
            fallback.warning = "degenerate layout; emitted DOT instead";
            return fallback;
        }
    }

    auto h = highlights_for(m, pq);
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-110 -110 220 220\">\n";
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (!h.face[f]) continue;
        out << "<polygon class=\"nonflat\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" "
               "points=\"";
        for (DartId d : m.face_walk(f))
            out << x[m.origin(d)] << "," << y[m.origin(d)] << " ";
        out << "\"/>\n";
    }
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        DartId d = dart_of(e);
        out << "<line x1=\"" << x[m.origin(d)] << "\" y1=\"" << y[m.origin(d)] << "\" x2=\""
            << x[m.head(d)] << "\" y2=\"" << y[m.head(d)] << "\" stroke=\"black\" "
               "stroke-width=\"0.5\"/>\n";
    }
    for (VertexId v = 0; v < V; ++v) {
        out << "<circle cx=\"" << x[v] << "\" cy=\"" << y[v] << "\" r=\"1.2\" fill=\""
            << (h.vertex[v] ? "red" : "black") << "\"/>\n";
    }
    out << "</svg>\n";
    RenderResult result;
    result.content = out.str();
    result.is_svg = true;
    return result;
}

}  // namespace pqmap
