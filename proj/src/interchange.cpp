#include "kneser/interchange.hpp"

#include <stdexcept>

namespace kneser {

json to_json(const Hypergraph& h, const std::optional<Coloring>& coloring) {
    const Family* f = h.family();
    if (!f) throw std::invalid_argument("interchange format needs a family-backed hypergraph");
    json j;
    j["n"] = f->ground_size();
    j["k"] = f->set_size();
    j["r"] = h.uniformity();
    json vertices = json::array();
    for (const auto& s : *f) vertices.push_back(s.elements());
    j["vertices"] = std::move(vertices);
    if (h.is_generator()) {
        j["generator"] = "kneser";
    } else {
        json edges = json::array();
        h.for_each_edge([&](std::span<const VertexId> e) { edges.push_back(std::vector<VertexId>(e.begin(), e.end())); });
        j["edges"] = std::move(edges);
    }
    if (coloring) {
        if (coloring->colors.size() != h.vertex_count()) throw std::invalid_argument("coloring does not match vertex count");
        j["coloring"] = coloring->colors;
    }
    return j;
}

Instance instance_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        const int r = j.at("r").get<int>();
        std::vector<VertexSet> sets;
        for (const auto& v : j.at("vertices")) sets.push_back(VertexSet::from_elements(n, v.get<std::vector<int>>()));
        auto family = std::make_shared<const Family>(n, k, std::move(sets));
        const std::size_t count = family->size();

        Instance inst{Hypergraph{}, std::nullopt};
        if (j.contains("generator")) {
            if (j.at("generator").get<std::string>() != "kneser") throw std::invalid_argument("unknown generator");
            if (j.contains("edges")) throw std::invalid_argument("generator and edges are mutually exclusive");
            inst.hypergraph = Hypergraph::kneser(family, r);
        } else {
            std::vector<VertexId> flat;
            for (const auto& e : j.at("edges")) {
                auto tuple = e.get<std::vector<VertexId>>();
                if (static_cast<int>(tuple.size()) != r) throw std::invalid_argument("edge arity differs from r");
                flat.insert(flat.end(), tuple.begin(), tuple.end());
            }
            inst.hypergraph = Hypergraph::from_edges(r, count, std::move(flat), family);
        }
        if (j.contains("coloring")) {
            auto colors = j.at("coloring").get<std::vector<Color>>();
            if (colors.size() != count) throw std::invalid_argument("coloring length differs from vertex count");
            inst.coloring = Coloring::from_colors(std::move(colors));
        }
        return inst;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed hypergraph JSON: ") + e.what());
    }
}

std::string emit(const Hypergraph& h, const std::optional<Coloring>& coloring) { return to_json(h, coloring).dump(); }

Instance parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    return instance_from_json(j);
}

json to_json(const WitnessReport& w) {
    json parts = json::array();
    for (const auto& p : w.parts) parts.push_back(p.elements());
    return {{"case", w.which == WitnessCase::i ? "i" : "ii"}, {"i", w.level}, {"alpha", w.alpha}, {"parts", parts}, {"counts", w.counts}};
}

json to_json(const ChiCertificate& c) {
    return {{"chi", c.chi}, {"lower", c.lower}, {"upper", c.upper}, {"exact", c.exact}, {"nodes", c.nodes}, {"coloring", c.witness.colors}};
}

}  // namespace kneser
