#pragma once

// Reduction pipeline in front of the main engine: strict conditions are
// stripped (and restored by restriction at the end), families with several
// fiber coordinates are projected coordinate-wise, decomposed, recombined as
// indexed products, and finally restricted back to the original family.

#include <string>
#include <vector>

#include "ufss/engines/rcf.hpp"

namespace ufss {

// Per-coordinate projections of a family with several fiber coordinates.
// Cross-coordinate strict conditions are dropped (the final restriction
// reinstates them); a root-existence filter keeps only index points whose
// other coordinates are solvable.
inline std::vector<UFSS> project_coordinates(const UFSS& u) {
    if (u.l < 2) throw NormalizationError("projection requires several fiber coordinates");
    std::vector<UFSS> out;
    for (unsigned i = 0; i < u.l; ++i) {
        UFSS proj;
        proj.m = u.m;
        proj.k = u.k;
        proj.l = 1;
        proj.Z.m = u.m;
        proj.Z.k = u.k;
        proj.Z.l = 1;
        for (const auto& eq : u.Z.equations)
            if (eq.z_coord == i) proj.Z.equations.push_back(ZEquation{0, eq.p});
        if (i < u.Z.selectors.size() && u.Z.selectors[i]) proj.Z.selectors = {u.Z.selectors[i]};
        proj.Z.ambient = u.Z.ambient;
        proj.Z.guards = u.Z.guards;
        proj.Z.exclude_degenerate = u.Z.exclude_degenerate;
        // keep strict conditions that involve only this fiber coordinate
        for (const auto& s : u.Z.strict) {
            bool only_this = true;
            for (const auto& [e, c] : s.terms())
                for (unsigned zc = 0; zc < u.l; ++zc)
                    if (zc != i && e[u.m + u.k + zc] != 0) only_this = false;
            if (!only_this) continue;
            std::vector<unsigned> vm(u.m + u.k + u.l, 0);
            for (unsigned v = 0; v < u.m + u.k; ++v) vm[v] = v;
            vm[u.m + u.k + i] = u.m + u.k;
            proj.Z.strict.push_back(s.embed(u.m + u.k + 1, vm));
        }
        proj.S = u.S;
        // other coordinates must have at least one admissible value
        XPtr X = u.X;
        for (unsigned j = 0; j < u.l; ++j) {
            if (j == i) continue;
            UFSS other;  // single-coordinate view used only for evaluation
            DefSetDescriptor oz;
            oz.m = u.m;
            oz.k = u.k;
            oz.l = 1;
            for (const auto& eq : u.Z.equations)
                if (eq.z_coord == j) oz.equations.push_back(ZEquation{0, eq.p});
            oz.ambient = u.Z.ambient;
            oz.guards = u.Z.guards;
            oz.exclude_degenerate = u.Z.exclude_degenerate;
            for (const auto& s : u.Z.strict) {
                bool only_that = true;
                for (const auto& [e, c] : s.terms())
                    for (unsigned zc = 0; zc < u.l; ++zc)
                        if (zc != j && e[u.m + u.k + zc] != 0) only_that = false;
                if (!only_that) continue;
                std::vector<unsigned> vm(u.m + u.k + u.l, 0);
                for (unsigned v = 0; v < u.m + u.k; ++v) vm[v] = v;
                vm[u.m + u.k + j] = u.m + u.k;
                oz.strict.push_back(s.embed(u.m + u.k + 1, vm));
            }
            auto pred = std::make_shared<Predicate>();
            pred->kind = Predicate::Kind::FIBER_NONEMPTY;
            pred->z = std::make_shared<DefSetDescriptor>(std::move(oz));
            X = make_filtered_x(X, pred);
        }
        proj.X = X;
        out.push_back(std::move(proj));
    }
    return out;
}

// All indexed products of per-coordinate pieces. Component pieces re-base
// onto consecutive blocks; a product is injective because its components
// are.
inline DecompositionResult recombine_products(const std::vector<DecompositionResult>& per_coord) {
    DecompositionResult out;
    struct Entry {
        const UFSS* piece;
        const std::vector<std::string>* tags;
        bool fallback;
    };
    std::vector<std::vector<Entry>> options;
    for (const auto& dec : per_coord) {
        std::vector<Entry> opts;
        for (std::size_t i = 0; i < dec.pieces.size(); ++i)
            opts.push_back({&dec.pieces[i], &dec.provenance[i], false});
        for (std::size_t i = 0; i < dec.fallback_pieces.size(); ++i)
            opts.push_back({&dec.fallback_pieces[i], &dec.fallback_provenance[i], true});
        options.push_back(std::move(opts));
        for (const auto& s : dec.trace.steps) out.trace.steps.push_back(s);
        out.trace.max_depth = std::max(out.trace.max_depth, dec.trace.max_depth);
    }
    std::vector<std::size_t> choice(options.size(), 0);
    for (;;) {
        bool any_empty = false;
        for (std::size_t i = 0; i < options.size(); ++i)
            if (options[i].empty()) any_empty = true;
        if (any_empty) break;

        // assemble the product of the current choice
        const unsigned l = static_cast<unsigned>(options.size());
        unsigned m_total = 0, k = 0;
        for (std::size_t i = 0; i < l; ++i) {
            m_total += options[i][choice[i]].piece->m;
            k = options[i][choice[i]].piece->k;
        }
        UFSS prod;
        prod.m = m_total;
        prod.k = k;
        prod.l = l;
        prod.Z.m = m_total;
        prod.Z.k = k;
        prod.Z.l = l;
        prod.Z.selectors.assign(l, std::nullopt);
        bool fallback = false;
        std::vector<std::string> tags{provenance::L36_PRODUCT};
        unsigned offset = 0;
        ModelPtr S_prod;
        XPtr X_prod;
        for (std::size_t i = 0; i < l; ++i) {
            const Entry& e = options[i][choice[i]];
            const UFSS& c = *e.piece;
            fallback = fallback || e.fallback;
            for (const auto& t : *e.tags)
                if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
            std::vector<unsigned> bmap(c.m);
            for (unsigned v = 0; v < c.m; ++v) bmap[v] = offset + v;
            for (const auto& eq : c.Z.equations)
                prod.Z.equations.push_back(
                    ZEquation{static_cast<unsigned>(i), eq.p.embed_base(m_total, bmap)});
            if (!c.Z.selectors.empty() && c.Z.selectors[0])
                prod.Z.selectors[i] = c.Z.selectors[0];
            std::vector<unsigned> ba(c.m + k);
            for (unsigned v = 0; v < c.m; ++v) ba[v] = offset + v;
            for (unsigned v = 0; v < k; ++v) ba[c.m + v] = m_total + v;
            for (const auto& cond : c.Z.ambient)
                prod.Z.ambient.push_back({cond.p.embed(m_total + k, ba), cond.rel});
            for (const auto& g : c.Z.guards) prod.Z.guards.push_back(g.embed(m_total + k, ba));
            std::vector<unsigned> full(c.m + k + 1);
            for (unsigned v = 0; v < c.m + k; ++v) full[v] = ba[v];
            full[c.m + k] = m_total + k + static_cast<unsigned>(i);
            for (const auto& s : c.Z.strict)
                prod.Z.strict.push_back(s.embed(m_total + k + l, full));
            prod.Z.exclude_degenerate = prod.Z.exclude_degenerate || c.Z.exclude_degenerate;
            S_prod = S_prod ? make_product_model(S_prod, c.S) : c.S;
            X_prod = X_prod ? make_product_x(X_prod, c.X) : c.X;
            offset += c.m;
        }
        prod.S = S_prod;
        prod.X = X_prod;
        prod.injective_flag = true;
        if (fallback)
            out.add_fallback(std::move(prod), std::move(tags));
        else
            out.add_piece(std::move(prod), std::move(tags));

        // advance the odometer
        std::size_t pos = 0;
        while (pos < options.size()) {
            if (++choice[pos] < options[pos].size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == options.size()) break;
    }
    return out;
}

struct PipelineLog {
    std::vector<std::string> reductions;
};

// Full decomposition of an arbitrary family: strip strict conditions,
// project fiber coordinates, decompose, recombine products, and restrict
// back to the original family. The reduction order is fixed and logged.
inline DecompositionResult decompose_full(const UFSS& u, const RcfOptions& opts = {},
                                          PipelineLog* log = nullptr) {
    bool need_restrict = !u.Z.strict.empty();
    UFSS envelope = u;
    if (need_restrict) {
        envelope.Z.strict.clear();
        if (log) log->reductions.push_back("strip-strict");
    }
    DecompositionResult dec;
    if (envelope.l > 1) {
        if (log) log->reductions.push_back("project-coordinates");
        auto coords = project_coordinates(envelope);
        std::vector<DecompositionResult> per;
        for (auto& c : coords) per.push_back(rcf_decompose(c, opts));
        if (log) log->reductions.push_back("recombine-products");
        dec = recombine_products(per);
        // the product envelope may mix coordinates across index points
        need_restrict = true;
        Measure init{static_cast<int>(u.k), std::nullopt};
        for (const auto& c : coords) {
            for (const auto& eq : c.Z.equations) {
                auto li = eq.p.leading_index();
                if (li && (!init.alpha || precedes(*init.alpha, *li))) init.alpha = li;
            }
        }
        dec.trace.initial = init;
    } else {
        if (log) log->reductions.push_back("decompose");
        dec = rcf_decompose(envelope, opts);
    }
    if (need_restrict) {
        if (log) log->reductions.push_back("restrict-to-original");
        RecursionTrace trace = dec.trace;
        dec = restrict_sub(u, dec);
        dec.trace = trace;
    }
    return dec;
}

}  // namespace ufss
