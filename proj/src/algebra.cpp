#include "fvtrace/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace fvtrace {

namespace {

std::string combine_labels(const std::string& a, const std::string& b) {
    if (a == "1") return b;
    if (b == "1") return a;
    return a + "*" + b;
}

std::string power_label(const std::string& var, std::size_t e) {
    if (e == 0) return "1";
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
}

}  // namespace

void Algebra::check_element(const FpVec& a) const {
    if (a.size() != dim_) throw std::invalid_argument("dimension mismatch");
}

FpVec Algebra::basis_element(std::size_t i) const {
    FpVec e(dim_, 0);
    e.at(i) = 1;
    return e;
}

FpVec Algebra::mul(const FpVec& a, const FpVec& b) const {
    check_element(a);
    check_element(b);
    FpVec out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            vec_axpy(f_, out, f_.mul(a[i], b[j]), table_[i * dim_ + j]);
        }
    }
    return out;
}

Mat Algebra::mult_matrix(const FpVec& a) const {
    check_element(a);
    Mat m(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        FpVec col(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (a[i]) vec_axpy(f_, col, a[i], table_[i * dim_ + j]);
        }
        for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
    }
    return m;
}

Poly Algebra::minimal_polynomial(const FpVec& a) const {
    check_element(a);
    const Mat M = mult_matrix(a);
    // flattened powers I, M, M^2, ...; the minimal polynomial has degree
    // at most dim (Cayley-Hamilton for the multiplication operator)
    std::vector<FpVec> powers;
    Mat acc = Mat::identity(f_, dim_);
    for (std::size_t t = 0;; ++t) {
        FpVec flat(dim_ * dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) flat[i * dim_ + j] = acc.at(i, j);
        // solve sum_s c_s * powers[s] = flat
        if (t > 0) {
            Mat sys(f_, dim_ * dim_, t);
            for (std::size_t row = 0; row < dim_ * dim_; ++row)
                for (std::size_t s = 0; s < t; ++s) sys.at(row, s) = powers[s][row];
            if (auto c = sys.solve(flat)) {
                FpVec coeffs(t + 1, 0);
                for (std::size_t s = 0; s < t; ++s) coeffs[s] = f_.neg((*c)[s]);
                coeffs[t] = 1;
                return Poly(f_, std::move(coeffs));
            }
        }
        powers.push_back(std::move(flat));
        acc = acc.mul(M);
        if (t > dim_) throw std::logic_error("minimal polynomial not found within dimension bound");
    }
}

FpVec Algebra::element_from_poly(const Poly& q) const {
    if (prov_.kind != Provenance::Kind::Quotient || !prov_.modulus) {
        throw std::invalid_argument("algebra has no quotient presentation");
    }
    f_.require_same(q.field());
    Poly red = q % *prov_.modulus;
    FpVec out(dim_, 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = red.coeff(i);
    return out;
}

Poly Algebra::poly_from_element(const FpVec& a) const {
    if (prov_.kind != Provenance::Kind::Quotient) {
        throw std::invalid_argument("algebra has no quotient presentation");
    }
    check_element(a);
    return Poly(f_, a);
}

std::string Algebra::element_str(const FpVec& a) const {
    check_element(a);
    std::string out;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (labels_[i] == "1") {
            out += std::to_string(a[i]);
        } else {
            if (a[i] != 1) out += std::to_string(a[i]) + "*";
            out += labels_[i];
        }
    }
    return out.empty() ? "0" : out;
}

void Algebra::validate() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (table_entry(i, j) != table_entry(j, i)) {
                throw std::invalid_argument("structure constants not commutative at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            FpVec ij = table_entry(i, j);
            for (std::size_t k = 0; k < dim_; ++k) {
                FpVec left = mul(ij, basis_element(k));
                FpVec right = mul(basis_element(i), table_entry(j, k));
                if (left != right) {
                    throw std::invalid_argument("structure constants not associative at (" +
                                                std::to_string(i) + "," + std::to_string(j) + "," +
                                                std::to_string(k) + ")");
                }
            }
        }
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        if (mul(unit_, basis_element(i)) != basis_element(i)) {
            throw std::invalid_argument("unit law fails at basis element " + std::to_string(i));
        }
    }
}

Algebra Algebra::from_univariate_quotient(const Poly& h, const std::string& var) {
    if (h.degree() < 1) throw std::invalid_argument("quotient modulus must have degree >= 1");
    const Field& f = h.field();
    const Poly hm = h.monic();
    const std::size_t m = std::size_t(hm.degree());
    Algebra A(f, m);
    // x^k mod h for k up to 2m-2
    std::vector<FpVec> xpow(2 * m - 1, FpVec(m, 0));
    Poly acc = Poly::constant(f, 1);
    for (std::size_t k = 0; k + 1 < 2 * m; ++k) {
        for (std::size_t i = 0; i < m; ++i) xpow[k][i] = acc.coeff(i);
        acc = (acc * Poly::x(f)) % hm;
    }
    A.table_.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) A.table_[i * m + j] = xpow[i + j];
    A.unit_ = A.basis_element(0);
    A.labels_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) A.labels_.push_back(power_label(var, i));
    A.prov_.kind = Provenance::Kind::Quotient;
    A.prov_.modulus = hm;
    A.prov_.var = var;
    A.prov_.moduli = {hm};
    A.prov_.vars = {var};
    return A;
}

Algebra Algebra::direct_product(const std::vector<Algebra>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct product of empty list");
    const Field& f = parts[0].field();
    std::size_t m = 0;
    for (const auto& part : parts) {
        f.require_same(part.field());
        m += part.dim();
    }
    Algebra A(f, m);
    A.table_.assign(m * m, FpVec(m, 0));
    A.unit_.assign(m, 0);
    std::size_t off = 0;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const Algebra& part = parts[pi];
        const std::size_t d = part.dim();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const FpVec& entry = part.table_entry(i, j);
                FpVec& dst = A.table_[(off + i) * m + (off + j)];
                for (std::size_t k = 0; k < d; ++k) dst[off + k] = entry[k];
            }
            A.unit_[off + i] = part.unit()[i];
            std::string label = part.labels()[i];
            A.labels_.push_back(parts.size() > 1 ? "(" + std::to_string(pi + 1) + ":" + label + ")"
                                                 : label);
        }
        off += d;
    }
    A.prov_.kind = Provenance::Kind::Product;
    for (const auto& part : parts) A.prov_.part_dims.push_back(part.dim());
    return A;
}

Algebra Algebra::tensor_product(const Algebra& A, const Algebra& B) {
    A.field().require_same(B.field());
    const Field& f = A.field();
    const std::size_t m = A.dim(), n = B.dim();
    Algebra T(f, m * n);
    T.table_.assign(m * n * m * n, FpVec(m * n, 0));
    // flat index of alpha_i (x) beta_j is j*m + i (j-major)
    auto idx = [m](std::size_t i, std::size_t j) { return j * m + i; };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            T.labels_.push_back(combine_labels(A.labels()[i], B.labels()[j]));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    const FpVec& au = A.table_entry(i, k);  // alpha_i * alpha_k
                    const FpVec& bv = B.table_entry(j, l);  // beta_j * beta_l
                    FpVec& dst = T.table_[idx(i, j) * (m * n) + idx(k, l)];
                    for (std::size_t u = 0; u < m; ++u) {
                        if (au[u] == 0) continue;
                        for (std::size_t v = 0; v < n; ++v) {
                            if (bv[v] == 0) continue;
                            dst[idx(u, v)] = f.add(dst[idx(u, v)], f.mul(au[u], bv[v]));
                        }
                    }
                }
            }
        }
    }
    T.unit_.assign(m * n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::uint16_t c = f.mul(A.unit()[i], B.unit()[j]);
            if (c) T.unit_[idx(i, j)] = c;
        }
    }
    T.prov_.kind = Provenance::Kind::Tensor;
    T.prov_.part_dims = {m, n};
    // multivariate provenance survives tensoring when both sides carry it
    if (!A.prov_.moduli.empty() && !B.prov_.moduli.empty()) {
        T.prov_.moduli = A.prov_.moduli;
        T.prov_.moduli.insert(T.prov_.moduli.end(), B.prov_.moduli.begin(), B.prov_.moduli.end());
        T.prov_.vars = A.prov_.vars;
        T.prov_.vars.insert(T.prov_.vars.end(), B.prov_.vars.begin(), B.prov_.vars.end());
    }
    return T;
}

Algebra Algebra::from_multivariate(const std::vector<Poly>& moduli, std::vector<std::string> vars) {
    if (moduli.empty()) throw std::invalid_argument("multivariate quotient needs at least one modulus");
    if (vars.empty()) {
        if (moduli.size() == 1) {
            vars = {"x"};
        } else {
            for (std::size_t i = 0; i < moduli.size(); ++i) vars.push_back("x" + std::to_string(i + 1));
        }
    }
    if (vars.size() != moduli.size()) throw std::invalid_argument("one variable name per modulus");
    Algebra acc = from_univariate_quotient(moduli[0], vars[0]);
    for (std::size_t i = 1; i < moduli.size(); ++i) {
        acc = tensor_product(acc, from_univariate_quotient(moduli[i], vars[i]));
    }
    return acc;
}

Algebra Algebra::from_table(const Field& f, std::vector<FpVec> table, std::vector<std::string> labels) {
    std::size_t m = 0;
    while (m * m < table.size()) ++m;
    if (m * m != table.size() || m == 0) throw std::invalid_argument("table must have dim^2 entries");
    for (const auto& entry : table) {
        if (entry.size() != m) throw std::invalid_argument("table entry of wrong length");
        for (std::uint16_t v : entry) {
            if (v >= f.p()) throw std::invalid_argument("table entry not a canonical residue");
        }
    }
    Algebra A(f, m);
    A.table_ = std::move(table);
    if (labels.empty()) {
        for (std::size_t i = 0; i < m; ++i) labels.push_back("e" + std::to_string(i));
    }
    if (labels.size() != m) throw std::invalid_argument("one label per basis element");
    A.labels_ = std::move(labels);
    // solve the unit from e * basis_i = basis_i for all i
    Mat sys(f, m * m, m);
    FpVec rhs(m * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t row = 0; row < m; ++row) {
            for (std::size_t k = 0; k < m; ++k) sys.at(i * m + row, k) = A.table_entry(k, i)[row];
            rhs[i * m + row] = (row == i) ? 1 : 0;
        }
    }
    auto unit = sys.solve(rhs);
    if (!unit) throw std::invalid_argument("structure constants admit no unit");
    A.unit_ = *unit;
    A.validate();
    return A;
}

CrtDecomposition::CrtDecomposition(Poly parent_modulus, std::vector<CrtComponent> components)
    : parent_(std::move(parent_modulus)), comps_(std::move(components)) {}

FpVec CrtDecomposition::project(std::size_t comp, const FpVec& parent_coords) const {
    const CrtComponent& c = comps_.at(comp);
    const Field& f = parent_.field();
    Poly rep(f, parent_coords);
    Poly red = rep % c.modulus_power;
    FpVec out(c.algebra.dim(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = red.coeff(i);
    return out;
}

Mat CrtDecomposition::combined_projection_matrix() const {
    const Field& f = parent_.field();
    const std::size_t m = std::size_t(parent_.degree());
    Mat M(f, m, m);
    std::size_t row_off = 0;
    for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
        const std::size_t d = comps_[ci].algebra.dim();
        for (std::size_t col = 0; col < m; ++col) {
            FpVec basis(m, 0);
            basis[col] = 1;
            FpVec img = project(ci, basis);
            for (std::size_t r = 0; r < d; ++r) M.at(row_off + r, col) = img[r];
        }
        row_off += d;
    }
    return M;
}

CrtDecomposition crt_decompose(const Poly& h, std::uint64_t seed) {
    if (h.degree() < 1) throw std::invalid_argument("decomposition needs degree >= 1");
    const Poly hm = h.monic();
    Factorization fac = factor(hm, seed);
    std::vector<CrtComponent> comps;
    comps.reserve(fac.factors.size());
    for (const auto& [g, r] : fac.factors) {
        Poly power = g.pow(r);
        Algebra alg = Algebra::from_univariate_quotient(power);
        comps.push_back({g, r, std::move(power), std::move(alg)});
    }
    return CrtDecomposition(hm, std::move(comps));
}

}  // namespace fvtrace
