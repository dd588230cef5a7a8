#pragma once

#include "nambu/multivector.hpp"

namespace nambu {

/// Schouten-Nijenhuis bracket of multivector fields.
///
/// Computed by a coordinate formula over anticommuting slot symbols: writing
/// a degree-p field P as P(x, xi) with odd symbols xi_i standing for d_i,
///
///   [P, Q] = (-1)^(p-1) sum_i dP/dxi_i * dQ/dx_i
///          - (-1)^(p(q-1)) sum_i dQ/dxi_i * dP/dx_i,
///
/// products taken in the written slot order. The sign placement is pinned by
/// two anchors: [X, f] = X(f) for vector fields, and [G, f] = -contract(G, f)
/// for bivectors G, which together with the wedge expansion over vector
/// fields force [P, f] = (-1)^(p-1) contract(P, f) in general.
///
/// Degree of the result is p+q-1; two degree-0 arguments give 0. On vector
/// fields this is the Lie bracket, and [L, L] = 0 characterizes Poisson
/// bivectors.
inline Multivector schouten(const Multivector& p, const Multivector& q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("schouten: dimension mismatch");
    const int dim = p.dimension();
    const int dp = p.degree(), dq = q.degree();
    if (dp == 0 && dq == 0) return Multivector(dim, 0);

    Multivector r(dim, dp + dq - 1);
    const int sign_pq = (dp % 2 == 1) ? 1 : -1;              // (-1)^(p-1)
    const int sign_qp = ((dp * (dq - 1)) % 2 == 0) ? -1 : 1; // -(-1)^(p(q-1))

    // sum_i dP/dxi_i * dQ/dx_i
    for (auto& [ip, cp] : p.terms()) {
        for (std::size_t pos = 0; pos < ip.size(); ++pos) {
            const int i = ip[pos];
            const IndexSet rest = detail::erase_at(ip, pos);
            const int slot_sign = (pos % 2 == 0) ? 1 : -1;
            for (auto& [iq, cq] : q.terms()) {
                Polynomial dcq = cq.partial(i);
                if (dcq.is_zero()) continue;
                auto [msign, merged] = detail::merge_indices(rest, iq);
                if (msign == 0) continue;
                Polynomial piece = cp * dcq;
                if (sign_pq * slot_sign * msign < 0) piece = -piece;
                r.add_term(merged, piece);
            }
        }
    }

    // sum_i dQ/dxi_i * dP/dx_i
    for (auto& [iq, cq] : q.terms()) {
        for (std::size_t pos = 0; pos < iq.size(); ++pos) {
            const int i = iq[pos];
            const IndexSet rest = detail::erase_at(iq, pos);
            const int slot_sign = (pos % 2 == 0) ? 1 : -1;
            for (auto& [ip, cp] : p.terms()) {
                Polynomial dcp = cp.partial(i);
                if (dcp.is_zero()) continue;
                auto [msign, merged] = detail::merge_indices(rest, ip);
                if (msign == 0) continue;
                Polynomial piece = cq * dcp;
                if (sign_qp * slot_sign * msign < 0) piece = -piece;
                r.add_term(merged, piece);
            }
        }
    }
    return r;
}

}  // namespace nambu
