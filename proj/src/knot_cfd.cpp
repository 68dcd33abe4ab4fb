#include "borderfloer/knot_cfd.hpp"

#include <cstdlib>
#include <stdexcept>

#include "borderfloer/structure_io.hpp"

namespace borderfloer {

using nlohmann::json;

F2Matrix f2_identity(std::size_t n) {
    F2Matrix m(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

F2Matrix f2_multiply(const F2Matrix& a, const F2Matrix& b) {
    const std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    F2Matrix out(rows, std::vector<std::uint8_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner && k < a[i].size(); ++k)
            if (a[i][k] & 1)
                for (std::size_t j = 0; j < cols; ++j) out[i][j] ^= b[k][j] & 1;
    return out;
}

ModelReport validate_model(const CFKModel& m) {
    ModelReport rep;
    if (m.n < 0) rep.errors.push_back("n must be non-negative");
    const std::size_t dim = std::size_t(2 * std::max(m.n, 0) + 1);
    if (m.vertical_lengths.size() != std::size_t(std::max(m.n, 0)))
        rep.errors.push_back("expected " + std::to_string(m.n) + " vertical lengths");
    if (m.horizontal_lengths.size() != std::size_t(std::max(m.n, 0)))
        rep.errors.push_back("expected " + std::to_string(m.n) + " horizontal lengths");
    for (std::size_t j = 0; j < m.vertical_lengths.size(); ++j)
        if (m.vertical_lengths[j] <= 0) rep.errors.push_back("vertical length k" + std::to_string(j + 1) + " must be positive");
    for (std::size_t j = 0; j < m.horizontal_lengths.size(); ++j)
        if (m.horizontal_lengths[j] <= 0)
            rep.errors.push_back("horizontal length l" + std::to_string(j + 1) + " must be positive");
    bool shapes = true;
    for (const auto* mat : {&m.xi_to_eta, &m.eta_to_xi}) {
        const char* which = mat == &m.xi_to_eta ? "xi_to_eta" : "eta_to_xi";
        bool square = mat->size() == dim;
        for (const auto& row : *mat) {
            square = square && row.size() == dim;
            for (auto v : row)
                if (v > 1) rep.errors.push_back(std::string(which) + " has an entry other than 0 or 1");
        }
        if (!square) {
            rep.errors.push_back(std::string(which) + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
            shapes = false;
        }
    }
    if (shapes) {
        auto id = f2_identity(dim);
        if (f2_multiply(m.xi_to_eta, m.eta_to_xi) != id || f2_multiply(m.eta_to_xi, m.xi_to_eta) != id)
            rep.errors.push_back("xi_to_eta and eta_to_xi are not inverse over F2");
    }
    return rep;
}

namespace {

// Arrow endpoint before pushing eta-anchored ends into the xi basis.
struct End {
    enum Kind { Xi, Eta, Gen } kind;
    int index;
};

}  // namespace

BorderedStructure build_cfd(const FramedComplement& fc) {
    const CFKModel& m = fc.model;
    if (auto rep = validate_model(m); !rep.ok())
        throw std::invalid_argument("invalid model '" + m.name + "': " + rep.errors.front());
    const int dim = 2 * m.n + 1;
    std::vector<Generator> gens;
    for (int p = 0; p < dim; ++p) gens.push_back({"xi" + std::to_string(p), {Idempotent::I0}, 0});
    auto iota1 = [&](std::string name) {
        gens.push_back({std::move(name), {Idempotent::I1}, 0});
        return End{End::Gen, int(gens.size()) - 1};
    };
    struct Arrow {
        End from, to;
        Chord chord;
    };
    std::vector<Arrow> arrows;
    auto chain = [&](const std::vector<End>& links) {
        for (std::size_t i = 0; i + 1 < links.size(); ++i) arrows.push_back({links[i], links[i + 1], Chord::R23});
    };

    const int r = std::abs(2 * m.tau - fc.framing);
    std::vector<End> gamma;
    for (int i = 1; i <= r; ++i) gamma.push_back(iota1("gamma" + std::to_string(i)));
    for (int j = 1; j <= m.n; ++j) {
        std::vector<End> kappa, lambda;
        for (int i = 1; i <= m.vertical_lengths[std::size_t(j - 1)]; ++i)
            kappa.push_back(iota1("kappa" + std::to_string(j) + "_" + std::to_string(i)));
        for (int i = 1; i <= m.horizontal_lengths[std::size_t(j - 1)]; ++i)
            lambda.push_back(iota1("lambda" + std::to_string(j) + "_" + std::to_string(i)));
        arrows.push_back({{End::Xi, 2 * j}, kappa.front(), Chord::R123});
        chain(kappa);
        arrows.push_back({{End::Xi, 2 * j - 1}, kappa.back(), Chord::R1});
        arrows.push_back({{End::Eta, 2 * j - 1}, lambda.front(), Chord::R3});
        chain(lambda);
        arrows.push_back({lambda.back(), {End::Eta, 2 * j}, Chord::R2});
    }
    if (fc.framing < 2 * m.tau) {
        arrows.push_back({{End::Eta, 0}, gamma.front(), Chord::R3});
        chain(gamma);
        arrows.push_back({{End::Xi, 0}, gamma.back(), Chord::R1});
    } else if (fc.framing == 2 * m.tau) {
        arrows.push_back({{End::Xi, 0}, {End::Eta, 0}, Chord::R12});
    } else {
        arrows.push_back({{End::Xi, 0}, gamma.front(), Chord::R123});
        chain(gamma);
        arrows.push_back({gamma.back(), {End::Eta, 0}, Chord::R2});
    }

    // delta(xi_q) = sum_p x[q][p] delta(eta_p), and eta_p = sum_q y[p][q] xi_q.
    auto sources = [&](End e) {
        std::vector<int> out;
        if (e.kind != End::Eta) return std::vector<int>{e.index};
        for (int q = 0; q < dim; ++q)
            if (m.xi_to_eta[std::size_t(q)][std::size_t(e.index)]) out.push_back(q);
        return out;
    };
    auto targets = [&](End e) {
        std::vector<int> out;
        if (e.kind != End::Eta) return std::vector<int>{e.index};
        for (int q = 0; q < dim; ++q)
            if (m.eta_to_xi[std::size_t(e.index)][std::size_t(q)]) out.push_back(q);
        return out;
    };
    std::vector<OperationTerm> terms;
    for (const auto& a : arrows)
        for (int u : sources(a.from))
            for (int v : targets(a.to)) {
                OperationTerm t;
                t.source = u;
                t.target = v;
                t.out[0] = to_basis(a.chord);
                terms.push_back(t);
            }
    BorderedStructure out({{fc.side_label, SideKind::D}}, std::move(gens), std::move(terms));
    auto rep = validate_generic(out);
    if (!rep.ok())
        throw std::runtime_error("CFD of '" + m.name + "' at framing " + std::to_string(fc.framing) +
                                 " fails the type D relation:\n" + rep.summary(5));
    return out;
}

std::vector<std::string> builtin_model_names() { return {"unknot", "trefoil_rh", "trefoil_lh", "figure_eight"}; }

CFKModel builtin_model(std::string_view name) {
    auto perm = [](std::size_t dim, std::size_t a, std::size_t b) {
        F2Matrix m = f2_identity(dim);
        m[a][a] = m[b][b] = 0;
        m[a][b] = m[b][a] = 1;
        return m;
    };
    CFKModel m;
    m.name = std::string(name);
    if (name == "unknot") {
        m.xi_to_eta = m.eta_to_xi = f2_identity(1);
    } else if (name == "trefoil_rh") {
        // Staircase a -> b <- c: xi = (a, b, c), eta = (c, b, a).
        m.n = 1;
        m.tau = 1;
        m.vertical_lengths = m.horizontal_lengths = {1};
        m.xi_to_eta = m.eta_to_xi = perm(3, 0, 2);
    } else if (name == "trefoil_lh") {
        m.n = 1;
        m.tau = -1;
        m.vertical_lengths = m.horizontal_lengths = {1};
        m.xi_to_eta = m.eta_to_xi = perm(3, 0, 1);
    } else if (name == "figure_eight") {
        // Box plus an isolated generator: xi = (e, a, b, c, d), eta = (e, a, c, b, d).
        m.n = 2;
        m.tau = 0;
        m.vertical_lengths = m.horizontal_lengths = {1, 1};
        m.xi_to_eta = m.eta_to_xi = perm(5, 2, 3);
    } else {
        throw std::invalid_argument("unknown built-in model '" + std::string(name) + "'");
    }
    return m;
}

CFKModel model_from_json(const json& doc) {
    auto need = [&](const char* key) -> const json& {
        if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("model: missing field '") + key + "'");
        return doc.at(key);
    };
    auto ints = [&](const char* key) {
        const json& v = need(key);
        if (!v.is_array()) throw FormatError(std::string("model.") + key + ": expected a list of integers");
        std::vector<int> out;
        for (const auto& x : v) {
            if (!x.is_number_integer()) throw FormatError(std::string("model.") + key + ": expected integers");
            out.push_back(x.get<int>());
        }
        return out;
    };
    auto matrix = [&](const char* key) {
        const json& v = need(key);
        F2Matrix out;
        if (!v.is_array()) throw FormatError(std::string("model.") + key + ": expected a list of rows");
        for (const auto& row : v) {
            if (!row.is_array()) throw FormatError(std::string("model.") + key + ": expected a list of rows");
            std::vector<std::uint8_t> r;
            for (const auto& x : row) {
                if (!x.is_number_integer() || (x.get<int>() != 0 && x.get<int>() != 1))
                    throw FormatError(std::string("model.") + key + ": entries must be 0 or 1");
                r.push_back(std::uint8_t(x.get<int>()));
            }
            out.push_back(std::move(r));
        }
        return out;
    };
    CFKModel m;
    m.name = doc.value("name", std::string("model"));
    if (!need("n").is_number_integer()) throw FormatError("model.n: expected an integer");
    if (!need("tau").is_number_integer()) throw FormatError("model.tau: expected an integer");
    m.n = doc.at("n").get<int>();
    m.tau = doc.at("tau").get<int>();
    m.vertical_lengths = ints("vertical_lengths");
    m.horizontal_lengths = ints("horizontal_lengths");
    m.xi_to_eta = matrix("xi_to_eta");
    m.eta_to_xi = matrix("eta_to_xi");
    return m;
}

json model_to_json(const CFKModel& m) {
    return {{"name", m.name},
            {"n", m.n},
            {"tau", m.tau},
            {"vertical_lengths", m.vertical_lengths},
            {"horizontal_lengths", m.horizontal_lengths},
            {"xi_to_eta", m.xi_to_eta},
            {"eta_to_xi", m.eta_to_xi}};
}

CFKModel load_model(const std::filesystem::path& path) {
    json doc = read_json_file(path);
    try {
        return model_from_json(doc);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

CFKModel resolve_model(std::string_view spec) {
    constexpr std::string_view prefix = "builtin:";
    if (spec.substr(0, prefix.size()) == prefix) return builtin_model(spec.substr(prefix.size()));
    return load_model(std::filesystem::path(std::string(spec)));
}

}  // namespace borderfloer
