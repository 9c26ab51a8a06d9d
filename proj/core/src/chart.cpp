#include "greensphere/chart.hpp"

#include <json.hpp>

#include <sstream>

namespace greensphere {

namespace {

size_t glyph_count(const std::string& s) {
    size_t n = 0;
    for (unsigned char ch : s)
        if ((ch & 0xC0) != 0x80) ++n;
    return n;
}

std::string repeat(const std::string& g, int n) {
    std::string out;
    for (int i = 0; i < n; ++i) out += g;
    return out;
}

// Glyphs follow the published legend: Z2 = ●, Z/2 = ·, Z/8 = ◆, S_{8a-1} is a
// circled index (a), E_{a,b} a boxed pair [a,b].
std::string sphere_cell(const Engine& engine, long long s, long long c) {
    GreenGroup g = engine.green().group(s, c);
    std::string out;
    size_t k = 0;
    const auto& rows = engine.green().tables().table1;
    while (k < g.names.size()) {
        const RowRec& row = rows[size_t(g.names[k].row)];
        std::vector<long long> vals{g.names[k].a, g.names[k].b};
        switch (row.group.kind) {
            case GroupKind::Z2:
                out += "●";
                ++k;
                break;
            case GroupKind::Z2e:
                out += row.group.exponent == 1 ? "·" : "◆";
                ++k;
                break;
            case GroupKind::SGroup: {
                long long v = row.group.s_arg.eval(vals);
                if (v == 0)
                    out += "●";
                else if (((v % 2) + 2) % 2 == 1)
                    out += "◆";
                else
                    out += "(" + std::to_string(v / 2) + ")";
                ++k;
                break;
            }
            case GroupKind::EPair: {
                long long a = row.group.e_a.eval(vals), b = row.group.e_b.eval(vals);
                out += "[" + std::to_string(a) + "," + std::to_string(b) + "]";
                k += 2;
                break;
            }
        }
    }
    return out;
}

std::string fg_cell(const FGModule& m) {
    std::string out = repeat("●", m.free_rank);
    for (int e : m.torsion) out += e == 1 ? "·" : (e == 3 ? "◆" : "(" + std::to_string(e) + ")");
    return out;
}

std::string classical_cell(const Engine& engine, long long s) {
    FGModule m = engine.sphere().s_group(s, 0);
    return fg_cell(m);
}

std::string e2_cell(const Engine& engine, long long s, long long c) {
    std::string out;
    FGModule h0 = engine.ko().e2_closed_form(s, c, 0);
    out += repeat("●", h0.free_rank);
    int torsion = 0;
    for (int n = 1; n <= 3; ++n) torsion += int(engine.ko().e2_closed_form(s, c, n).torsion.size());
    out += repeat("·", torsion);
    return out;
}

std::string cell_content(const Engine& engine, const std::string& ring, long long s, long long c) {
    if (ring == "ku") return fg_cell(engine.ku().group(s, c));
    if (ring == "e2") return e2_cell(engine, s, c);
    if (ring == "ko") return fg_cell(engine.ko().ko_group_closed_form(s, c));
    if (ring == "sphere") return sphere_cell(engine, s, c);
    if (ring == "mackey") {
        std::string top = sphere_cell(engine, s, c);
        std::string bottom = classical_cell(engine, s);
        if (top.empty() && bottom.empty()) return "";
        return (top.empty() ? "0" : top) + "/" + (bottom.empty() ? "0" : bottom);
    }
    throw ExprError("unknown chart ring '" + ring + "'");
}

bool rho_connects(const Engine& engine, const std::string& ring, long long s, long long c) {
    // nonzero omega0-multiplication pi_{s,c} -> pi_{s-1,c}
    if (ring == "ku") return !engine.ku().rho_power_matrix(s - 1, c, 1).is_zero();
    if (ring == "ko") return !engine.ko().rho_power_matrix(s - 1, c, 1).is_zero();
    if (ring == "sphere" || ring == "mackey") {
        IntMat m = engine.green().omega_matrix(s, c);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j) != 0 && (val2(m.at(i, j)) < engine.params().precision)) return true;
        return false;
    }
    if (ring == "e2") {
        for (int n = 0; n <= 3; ++n) {
            for (const auto& mono : engine.ko().e2_basis(s, c, n)) {
                E2Monomial shifted = mono;
                shifted.rho += 1;
                if (!engine.ko().e2_monomial(shifted, Scalar::one(engine.params().precision))
                         .is_zero())
                    return true;
            }
        }
        return false;
    }
    return false;
}

}  // namespace

std::string chart_text(const Engine& engine, const ChartSpec& spec) {
    std::ostringstream os;
    os << "pi_{s,c} chart, ring = " << spec.ring << ", s in [" << spec.smin << "," << spec.smax
       << "], c in [" << spec.cmin << "," << spec.cmax << "]\n";
    if (spec.smin > spec.smax || spec.cmin > spec.cmax) return os.str();

    std::vector<std::vector<std::string>> cells;
    std::vector<size_t> width(size_t(spec.smax - spec.smin + 1), 1);
    for (long long c = spec.cmax; c >= spec.cmin; --c) {
        std::vector<std::string> row;
        for (long long s = spec.smin; s <= spec.smax; ++s) {
            std::string cell = cell_content(engine, spec.ring, s, c);
            width[size_t(s - spec.smin)] = std::max(width[size_t(s - spec.smin)],
                                                    glyph_count(cell));
            row.push_back(std::move(cell));
        }
        cells.push_back(std::move(row));
    }
    for (long long s = spec.smin; s <= spec.smax; ++s)
        width[size_t(s - spec.smin)] =
            std::max(width[size_t(s - spec.smin)], std::to_string(s).size());

    size_t label = std::max(std::to_string(spec.cmin).size(), std::to_string(spec.cmax).size());
    for (long long c = spec.cmax; c >= spec.cmin; --c) {
        std::string lc = std::to_string(c);
        os << std::string(label - lc.size(), ' ') << lc << " |";
        const auto& row = cells[size_t(spec.cmax - c)];
        for (long long s = spec.smin; s <= spec.smax; ++s) {
            const std::string& cell = row[size_t(s - spec.smin)];
            os << ' ' << cell
               << std::string(width[size_t(s - spec.smin)] - glyph_count(cell), ' ');
        }
        os << "\n";
    }
    os << std::string(label, ' ') << " +";
    for (long long s = spec.smin; s <= spec.smax; ++s)
        os << std::string(width[size_t(s - spec.smin)] + 1, '-');
    os << "\n" << std::string(label, ' ') << "  ";
    for (long long s = spec.smin; s <= spec.smax; ++s) {
        std::string ls = std::to_string(s);
        os << ls << std::string(width[size_t(s - spec.smin)] + 1 - ls.size(), ' ');
    }
    os << "\n";
    return os.str();
}

std::string chart_svg(const Engine& engine, const ChartSpec& spec) {
    const int cw = 64, ch = 32, margin = 40;
    long long ns = spec.smax - spec.smin + 1, nc = spec.cmax - spec.cmin + 1;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << (margin * 2 + ns * cw) << "\" height=\"" << (margin * 2 + nc * ch) << "\">\n";
    auto cx = [&](long long s) { return margin + (s - spec.smin) * cw + cw / 2; };
    auto cy = [&](long long c) { return margin + (spec.cmax - c) * ch + ch / 2; };
    // blue rho-connectors first so that symbols draw over them
    for (long long c = spec.cmin; c <= spec.cmax; ++c)
        for (long long s = spec.smin + 1; s <= spec.smax; ++s)
            if (rho_connects(engine, spec.ring, s, c))
                os << "  <line x1=\"" << cx(s) << "\" y1=\"" << cy(c) << "\" x2=\"" << cx(s - 1)
                   << "\" y2=\"" << cy(c) << "\" stroke=\"blue\" stroke-width=\"1\"/>\n";
    for (long long c = spec.cmin; c <= spec.cmax; ++c)
        for (long long s = spec.smin; s <= spec.smax; ++s) {
            std::string cell = cell_content(engine, spec.ring, s, c);
            if (cell.empty()) continue;
            os << "  <text x=\"" << cx(s) << "\" y=\"" << (cy(c) + 4)
               << "\" text-anchor=\"middle\" font-size=\"12\">" << cell << "</text>\n";
        }
    for (long long s = spec.smin; s <= spec.smax; ++s)
        os << "  <text x=\"" << cx(s) << "\" y=\"" << (margin * 2 + nc * ch - 8)
           << "\" text-anchor=\"middle\" font-size=\"10\">" << s << "</text>\n";
    for (long long c = spec.cmin; c <= spec.cmax; ++c)
        os << "  <text x=\"" << (margin / 2) << "\" y=\"" << (cy(c) + 4)
           << "\" text-anchor=\"middle\" font-size=\"10\">" << c << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string chart_json(const Engine& engine, const ChartSpec& spec) {
    nlohmann::json j;
    j["ring"] = spec.ring;
    j["window"] = {spec.smin, spec.smax, spec.cmin, spec.cmax};
    nlohmann::json cells = nlohmann::json::array();
    for (long long c = spec.cmax; c >= spec.cmin; --c)
        for (long long s = spec.smin; s <= spec.smax; ++s) {
            std::string cell = cell_content(engine, spec.ring, s, c);
            if (cell.empty()) continue;
            nlohmann::json entry;
            entry["s"] = s;
            entry["c"] = c;
            entry["cell"] = cell;
            cells.push_back(entry);
        }
    j["cells"] = cells;
    return j.dump(2) + "\n";
}

std::string render_chart(const Engine& engine, const ChartSpec& spec) {
    if (spec.format == "text") return chart_text(engine, spec);
    if (spec.format == "svg") return chart_svg(engine, spec);
    if (spec.format == "json") return chart_json(engine, spec);
    throw ExprError("unknown chart format '" + spec.format + "'");
}

}  // namespace greensphere
