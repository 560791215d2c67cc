#include "gbn/hidden.hpp"
#include "gbn/markov.hpp"
#include "gbn/tree_toric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace gbn;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw GraphError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dag load_dag(const std::string& path) { return parse_dag(slurp(path)); }

VertexSet parse_csv(const std::string& s) {
    VertexSet out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string q_str(const mpq_class& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

json matrix_json(const RationalMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(q_str(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

void emit(bool as_json, json& doc, const std::string& text) {
    if (as_json) {
        doc["schema"] = 1;
        json ordered;
        ordered["schema"] = 1;
        for (auto& [k, v] : doc.items())
            if (k != "schema") ordered[k] = v;
        std::cout << ordered.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string sigma_key(int i, int j) {
    return "s(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string side_str(ChokeSide s) {
    switch (s) {
    case ChokeSide::ISide: return "I";
    case ChokeSide::JSide: return "J";
    case ChokeSide::Both: return "both";
    }
    return "?";
}

std::string set_str(const VertexSet& s) {
    std::string out = "{";
    for (size_t k = 0; k < s.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(s[k]);
    }
    return out + "}";
}

int run(CLI::App& app, int argc, char** argv) {
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");
    app.require_subcommand(1);
    json doc;
    std::ostringstream text;

    std::string dag_path, poly_path, hidden_csv, w_pairs, kind_name;
    std::string set_a, set_b, set_c;
    int pair_i = 0, pair_j = 0;
    std::uint64_t seed = 0;
    int amax = 2, cmax = 3, max_n = 5, schubert_n = 0, fa_p = 1, fa_m = 4;

    auto* treks_cmd = app.add_subcommand("treks", "list all treks between two vertices");
    treks_cmd->add_option("dag", dag_path)->required();
    treks_cmd->add_option("i", pair_i)->required();
    treks_cmd->add_option("j", pair_j)->required();
    treks_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        auto ts = enumerate_treks(g, pair_i, pair_j);
        json arr = json::array();
        for (const Trek& t : ts) {
            json jt;
            jt["top"] = t.top;
            jt["left"] = t.left;
            jt["right"] = t.right;
            arr.push_back(jt);
            text << "top " << t.top << "  left";
            for (Vertex v : t.left) text << " " << v;
            text << "  right";
            for (Vertex v : t.right) text << " " << v;
            text << "\n";
        }
        doc["treks"] = arr;
        if (ts.empty()) text << "no treks\n";
    });

    auto* param_cmd = app.add_subcommand("param", "print the covariance parametrization");
    param_cmd->add_option("dag", dag_path)->required();
    param_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        json obj;
        for (int i = 1; i <= g.vertex_count(); ++i)
            for (int j = i; j <= g.vertex_count(); ++j) {
                std::string p = trek_rule_sigma(g, i, j).str();
                text << sigma_key(i, j) << " = " << p << "\n";
                obj[sigma_key(i, j)] = p;
            }
        doc["sigma"] = obj;
    });

    auto* sample_cmd = app.add_subcommand("sample", "sample parameters and the exact covariance");
    sample_cmd->add_option("dag", dag_path)->required();
    sample_cmd->add_option("--seed", seed)->required();
    sample_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        ParameterAssignment th = sample_omega(g, seed);
        RationalMatrix sigma = model_covariance(g, th);
        json ja, jl, jp;
        for (auto& [v, x] : th.a) {
            text << "a" << v << " = " << q_str(x) << "\n";
            ja["a" + std::to_string(v)] = q_str(x);
        }
        for (auto& [e, x] : th.lambda) {
            text << "l(" << e.first << "," << e.second << ") = " << q_str(x) << "\n";
            jl["l(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"] =
                q_str(x);
        }
        for (auto& [v, x] : th.psi2) {
            text << "psi2_" << v << " = " << q_str(x) << "\n";
            jp["psi2_" + std::to_string(v)] = q_str(x);
        }
        text << "sigma =\n";
        for (int r = 0; r < sigma.rows(); ++r) {
            text << " ";
            for (int c = 0; c < sigma.cols(); ++c)
                text << " " << q_str(sigma.at(r, c));
            text << "\n";
        }
        doc["a"] = ja;
        doc["lambda"] = jl;
        doc["psi2"] = jp;
        doc["sigma"] = matrix_json(sigma);
    });

    auto* identify_cmd = app.add_subcommand("identify", "round-trip parameter recovery check");
    identify_cmd->add_option("dag", dag_path)->required();
    identify_cmd->add_option("--seed", seed)->required();
    identify_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        ParameterAssignment th = sample_omega(g, seed);
        ParameterAssignment back = recover_parameters(g, model_covariance(g, th));
        bool exact = th == back;
        text << (exact ? "exact" : "mismatch") << "\n";
        doc["exact"] = exact;
        if (!exact) throw GraphError("parameter recovery mismatch");
    });

    auto* dsep_cmd = app.add_subcommand("dsep", "d-separation query");
    dsep_cmd->add_option("dag", dag_path)->required();
    dsep_cmd->add_option("A", set_a)->required();
    dsep_cmd->add_option("B", set_b)->required();
    dsep_cmd->add_option("C", set_c);
    dsep_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        bool sep = d_separated(g, parse_csv(set_a), parse_csv(set_b), parse_csv(set_c));
        text << (sep ? "d-separated" : "not d-separated") << "\n";
        doc["d_separated"] = sep;
    });

    auto* ci_cmd = app.add_subcommand("ci-ideal", "conditional independence constraints");
    ci_cmd->add_option("dag", dag_path)->required();
    ci_cmd->add_option("--amax", amax);
    ci_cmd->add_option("--cmax", cmax);
    ci_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        json arr = json::array();
        for (const CiStatement& st : enumerate_ci_statements(g, amax, cmax)) {
            text << set_str(st.A) << " _||_ " << set_str(st.B) << " | "
                 << set_str(st.C) << "\n";
            json js;
            js["A"] = st.A;
            js["B"] = st.B;
            js["C"] = st.C;
            json minors = json::array();
            for (const ModelPolynomial& p : ci_minor_polynomials(st)) {
                text << "  " << p.str() << "\n";
                minors.push_back(p.str());
            }
            js["minors"] = minors;
            arr.push_back(js);
        }
        doc["statements"] = arr;
    });

    auto* choke_cmd = app.add_subcommand("choke", "choke points between two sets");
    choke_cmd->add_option("dag", dag_path)->required();
    choke_cmd->add_option("I", set_a)->required();
    choke_cmd->add_option("J", set_b)->required();
    choke_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        ChokeReport r = choke_points(g, parse_csv(set_a), parse_csv(set_b));
        doc["trivially_vanishing"] = r.trivially_vanishing;
        json arr = json::array();
        if (r.trivially_vanishing) {
            text << "no treks\n";
        } else if (r.points.empty()) {
            text << "no choke points\n";
        }
        for (auto [v, side] : r.points) {
            text << v << " (" << side_str(side) << "-side)\n";
            json jp;
            jp["vertex"] = v;
            jp["side"] = side_str(side);
            arr.push_back(jp);
        }
        doc["choke_points"] = arr;
    });

    auto* tetrads_cmd = app.add_subcommand("tetrads", "all vanishing tetrad binomials");
    tetrads_cmd->add_option("dag", dag_path)->required();
    tetrads_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        json arr = json::array();
        for (const TetradBinomial& b : all_vanishing_tetrads(g)) {
            text << b.str() << "\n";
            arr.push_back(b.str());
        }
        doc["tetrads"] = arr;
    });

    auto* verify_cmd = app.add_subcommand("verify", "check that a polynomial vanishes on the model");
    verify_cmd->add_option("dag", dag_path)->required();
    verify_cmd->add_option("--poly", poly_path)->required();
    verify_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        ModelPolynomial p = ModelPolynomial::parse(slurp(poly_path));
        bool ok = verify_vanishing(g, p);
        text << (ok ? "vanishes" : "does not vanish") << "\n";
        doc["vanishes"] = ok;
        if (!ok) throw GraphError("polynomial does not vanish");
    });

    auto* tg_cmd = app.add_subcommand("tree-gens", "generators of a tree model ideal");
    tg_cmd->add_option("dag", dag_path)->required();
    tg_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        TreeGenerators gens = tree_ideal_generators(g);
        json lin = json::array(), quad = json::array();
        for (const ModelPolynomial& p : gens.linear) {
            text << p.str() << "\n";
            lin.push_back(p.str());
        }
        for (const TetradBinomial& b : gens.quadratic) {
            text << b.str() << "\n";
            quad.push_back(b.str());
        }
        doc["linear"] = lin;
        doc["quadratic"] = quad;
    });

    auto* facets_cmd = app.add_subcommand("facets", "facet system of the tree polytope");
    facets_cmd->add_option("dag", dag_path)->required();
    facets_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        LinearSystem sys = polytope_system(g);
        auto row_str = [&](const LinearSystem::Row& r, const char* rel) {
            std::string s;
            bool any = false;
            for (int c = 0; c < sys.dim(); ++c) {
                long k = r.coeff[c];
                if (!k) continue;
                if (any) s += k < 0 ? " - " : " + ";
                else if (k < 0) s += "-";
                any = true;
                long mag = k < 0 ? -k : k;
                if (mag != 1) s += std::to_string(mag) + "*";
                s += sys.coord_name(c);
            }
            if (!any) s = "0";
            return s + " " + rel + " " + std::to_string(r.rhs);
        };
        json eq = json::array(), ineq = json::array();
        for (const auto& r : sys.equalities) {
            text << row_str(r, "=") << "\n";
            eq.push_back(row_str(r, "="));
        }
        for (const auto& r : sys.inequalities) {
            text << row_str(r, ">=") << "\n";
            ineq.push_back(row_str(r, ">="));
        }
        doc["equalities"] = eq;
        doc["inequalities"] = ineq;
    });

    auto* deg_cmd = app.add_subcommand("tree-degree", "degree of a tree model ideal");
    deg_cmd->add_option("dag", dag_path)->required();
    deg_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        mpz_class d = tree_degree(g);
        text << d.get_str() << "\n";
        doc["degree"] = d.get_str();
    });

    auto* po_cmd = app.add_subcommand("polytope-oracle", "vertex enumeration and normalized volume");
    po_cmd->add_option("dag", dag_path)->required();
    po_cmd->add_option("--max-n", max_n);
    po_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        PolytopeOracle o = polytope_vertex_oracle(g, max_n);
        json verts = json::array();
        for (const auto& v : o.vertices) {
            json row = json::array();
            text << " ";
            for (const mpq_class& x : v) {
                text << " " << q_str(x);
                row.push_back(q_str(x));
            }
            text << "\n";
            verts.push_back(row);
        }
        text << "normalized volume " << o.normalized_volume.get_str() << "\n";
        doc["vertices"] = verts;
        doc["normalized_volume"] = o.normalized_volume.get_str();
    });

    auto* grade_cmd = app.add_subcommand("grade", "upstream bidegree of a polynomial");
    grade_cmd->add_option("dag", dag_path)->required();
    grade_cmd->add_option("--hidden", hidden_csv)->required();
    grade_cmd->add_option("--poly", poly_path)->required();
    grade_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        UpstreamGrading gr = make_upstream_grading(g, parse_csv(hidden_csv));
        ModelPolynomial p = ModelPolynomial::parse(slurp(poly_path));
        UpstreamDegree d = upstream_degree(gr, p);
        if (d.homogeneous) {
            text << "(" << d.degree.first << "," << d.degree.second << ")\n";
            doc["homogeneous"] = true;
            doc["degree"] = {d.degree.first, d.degree.second};
        } else {
            text << "non-homogeneous: " << d.term_a << " vs " << d.term_b << "\n";
            doc["homogeneous"] = false;
            doc["witnesses"] = {d.term_a, d.term_b};
        }
    });

    auto* htg_cmd = app.add_subcommand("hidden-tree-gens", "tetrad generators on the leaves of a tree");
    htg_cmd->add_option("dag", dag_path)->required();
    htg_cmd->callback([&] {
        Dag g = load_dag(dag_path);
        json arr = json::array();
        for (const TetradBinomial& b : hidden_tree_generators(g)) {
            text << b.str() << "\n";
            arr.push_back(b.str());
        }
        doc["generators"] = arr;
    });

    auto print_model = [&](const HiddenModel& m, json& doc, std::ostringstream& text) {
        text << m.graph.print();
        json labels;
        for (Vertex v = 1; v <= m.graph.vertex_count(); ++v) {
            text << "label " << v << " " << m.graph.label(v) << "\n";
            labels[std::to_string(v)] = m.graph.label(v);
        }
        text << "hidden " << set_str(m.partition.hidden) << "\n";
        text << "observed " << set_str(m.partition.observed) << "\n";
        doc["graph"] = m.graph.print();
        doc["labels"] = labels;
        doc["hidden"] = m.partition.hidden;
        doc["observed"] = m.partition.observed;
    };

    auto* sch_cmd = app.add_subcommand("schubert", "determinantal model of a partial permutation");
    sch_cmd->add_option("--w", w_pairs);
    sch_cmd->add_option("--n", schubert_n)->required();
    sch_cmd->callback([&] {
        PartialPermutation w = parse_partial_permutation(w_pairs, schubert_n);
        HiddenModel m = build_schubert_graph(w);
        print_model(m, doc, text);
        json gens = json::array();
        for (const ModelPolynomial& p : schubert_generators(w)) {
            text << p.str() << "\n";
            gens.push_back(p.str());
        }
        doc["generators"] = gens;
    });

    auto* cl_cmd = app.add_subcommand("classical", "classical hidden-variable constructions");
    cl_cmd->add_option("--kind", kind_name)->required()
        ->check(CLI::IsMember({"factor_analysis", "doubled_caterpillar", "doubled_snowflake"}));
    cl_cmd->add_option("--p", fa_p);
    cl_cmd->add_option("--m", fa_m);
    cl_cmd->callback([&] {
        ClassicalKind kind = kind_name == "factor_analysis"
                                 ? ClassicalKind::FactorAnalysis
                             : kind_name == "doubled_caterpillar"
                                 ? ClassicalKind::DoubledCaterpillar
                                 : ClassicalKind::DoubledSnowflake;
        HiddenModel m = construct_classical_graph(kind, fa_p, fa_m);
        print_model(m, doc, text);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::runtime_error& e) {
        emit(as_json, doc, text.str());
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    emit(as_json, doc, text.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorial algebra of Gaussian Bayesian networks"};
    return run(app, argc, argv);
}
