#include "popalign/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <type_traits>

namespace popalign {

namespace {

// Minimal append-style JSON writer with a fixed emission order. nlohmann's
// serializer prints shortest-round-trip doubles, which is not what the
// golden-file contract wants, so the report path owns its formatting.
class JsonOut {
public:
    std::string str;

    void raw(const char* s) { str += s; }
    void raw(const std::string& s) { str += s; }

    void string(const std::string& s) {
        str += '"';
        for (char c : s) {
            switch (c) {
                case '"': str += "\\\""; break;
                case '\\': str += "\\\\"; break;
                case '\n': str += "\\n"; break;
                case '\r': str += "\\r"; break;
                case '\t': str += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        str += buf;
                    } else {
                        str += c;
                    }
            }
        }
        str += '"';
    }

    void key(const char* name) {
        if (!str.empty() && str.back() != '{' && str.back() != '[') str += ',';
        string(name);
        str += ':';
    }
};

void number(JsonOut& out, double v) { out.raw(format_double(v)); }

template <typename T>
    requires std::is_integral_v<T>
void number(JsonOut& out, T v) {
    out.raw(std::to_string(v));
}

void comma(JsonOut& out) {
    if (!out.str.empty() && out.str.back() != '{' && out.str.back() != '[') out.raw(",");
}

template <typename T>
void number_array(JsonOut& out, const char* name, const T& values) {
    out.key(name);
    out.raw("[");
    for (const auto& v : values) {
        comma(out);
        number(out, v);
    }
    out.raw("]");
}

void string_array(JsonOut& out, const char* name, const std::vector<std::string>& values) {
    out.key(name);
    out.raw("[");
    for (const auto& v : values) {
        comma(out);
        out.string(v);
    }
    out.raw("]");
}

void pi1_object(JsonOut& out, const char* name, const std::optional<Pi1Bound>& bound) {
    out.key(name);
    if (!bound) {
        out.raw("null");
        return;
    }
    out.raw("{");
    out.key("value");
    number(out, bound->value);
    out.key("raw");
    number(out, bound->raw);
    out.key("variant");
    out.string(to_string(bound->variant));
    out.key("sigma1_sq");
    number(out, bound->inputs.sigma1_sq);
    out.key("vol1");
    number(out, bound->inputs.vol1);
    out.key("vol2");
    number(out, bound->inputs.vol2);
    out.key("r_used");
    number(out, bound->inputs.r_used);
    out.raw("}");
}

void optional_number(JsonOut& out, const char* name, const std::optional<double>& v) {
    out.key(name);
    if (v)
        number(out, *v);
    else
        out.raw("null");
}

void witness_object(JsonOut& out, const char* name, const LpWitness& w) {
    out.key(name);
    out.raw("{");
    out.key("weights");
    out.raw("[");
    for (const auto& [idx, weight] : w.weights) {
        comma(out);
        out.raw("[");
        number(out, idx);
        out.raw(",");
        number(out, weight);
        out.raw("]");
    }
    out.raw("]");
    out.key("objective");
    number(out, w.objective);
    out.key("kappa");
    number(out, w.kappa);
    out.raw("}");
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e308" : "-1e308";
    if (v == 0.0) return "0";  // normalizes -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string report_to_json(const BoundReport& report) {
    JsonOut out;
    out.raw("{");
    out.key("dataset_id");
    out.string(report.dataset_id);
    out.key("n");
    number(out, report.n);
    out.key("m");
    number(out, report.m);
    out.key("e");
    number(out, report.e);
    out.key("duplicates_collapsed");
    number(out, report.duplicates_collapsed);
    out.key("binarized_entries");
    number(out, report.binarized_entries);
    out.key("dropped_zero_items");
    number(out, report.dropped_zero_items);
    out.key("user_side");
    out.raw(report.user_side ? "true" : "false");

    out.key("degree_stats");
    out.raw("{");
    out.key("vol1_items");
    number(out, report.degrees.vol1_items);
    out.key("vol2_items");
    number(out, report.degrees.vol2_items);
    out.key("r_max");
    number(out, static_cast<std::uint64_t>(report.degrees.r_max));
    out.key("d_bar");
    number(out, report.degrees.d_bar);
    out.key("d_tilde_items");
    number(out, report.degrees.d_tilde_items);
    number_array(out, "item_degrees", report.degrees.item_degrees);
    number_array(out, "user_degrees", report.degrees.user_degrees);
    out.key("rank_frequency");
    out.raw("[");
    for (const auto& [rank, freq] : rank_frequency(report.degrees.item_degrees)) {
        comma(out);
        out.raw("[");
        number(out, rank);
        out.raw(",");
        number(out, static_cast<std::uint64_t>(freq));
        out.raw("]");
    }
    out.raw("]");
    out.raw("}");

    number_array(out, "spectrum", report.spectrum);
    out.key("effective_rank");
    number(out, report.effective_rank);
    out.key("sigma1_multiplicity");
    number(out, report.sigma1_multiplicity);
    out.key("mu_ratio");
    number(out, report.mu_ratio);

    out.key("kumar");
    if (report.kumar) {
        const KumarBound& kb = *report.kumar;
        out.raw("{");
        out.key("lower");
        number(out, kb.lower);
        out.key("upper");
        number(out, kb.upper);
        out.key("mean_deg");
        number(out, kb.mean_deg);
        out.key("s");
        number(out, kb.s);
        out.key("p");
        number(out, kb.p);
        out.key("var_d");
        number(out, kb.decomposition.var_d);
        out.key("wedge_term");
        number(out, kb.decomposition.wedge_term);
        out.key("butterfly_term");
        number(out, kb.decomposition.butterfly_term);
        out.key("even_total");
        out.raw(kb.even_total ? "true" : "false");
        out.raw("}");
    } else {
        out.raw("null");
    }

    out.key("per_k");
    out.raw("[");
    for (const PerKRecord& rec : report.per_k) {
        comma(out);
        out.raw("{");
        out.key("k");
        number(out, rec.k);
        number_array(out, "subset", rec.subset);
        string_array(out, "subset_ids", rec.subset_ids);
        out.key("cos_theta_exact");
        number(out, rec.cos_theta_exact);
        pi1_object(out, "pi1_exact", rec.pi1_exact);
        pi1_object(out, "pi1_linearized_2nd", rec.pi1_linearized_2nd);
        pi1_object(out, "pi1_linearized_1st", rec.pi1_linearized_1st);
        out.key("a1");
        number(out, rec.pik.a1);
        optional_number(out, "a2", rec.pik.a2);
        out.key("b1");
        number(out, rec.pik.b1);
        optional_number(out, "b2", rec.pik.b2);
        out.key("b3");
        number(out, std::max(rec.pik.b3_from_b1, rec.pik.b3_from_b2.value_or(0.0)));
        out.key("c1");
        number(out, rec.pik.c1);
        out.key("c2");
        number(out, rec.pik.c2);
        out.key("c3");
        number(out, rec.pik.c3);
        out.key("lp_lower");
        number(out, rec.lp_lower_cos);
        out.key("lp_upper");
        number(out, rec.lp_upper_cos);
        out.key("lp_kappa_lower");
        number(out, rec.lp.kappa_lower);
        out.key("lp_kappa_upper");
        number(out, rec.lp.kappa_upper);
        out.key("lp_regime_lower");
        out.string(to_string(rec.lp.regime_lower));
        out.key("lp_regime_upper");
        out.string(to_string(rec.lp.regime_upper));
        witness_object(out, "lp_witness_lower", rec.lp.witness_lower);
        witness_object(out, "lp_witness_upper", rec.lp.witness_upper);
        out.key("kumar_lower");
        if (report.kumar)
            number(out, report.kumar->lower);
        else
            out.raw("null");
        out.key("kumar_upper");
        if (report.kumar)
            number(out, report.kumar->upper);
        else
            out.raw("null");
        out.key("tau_lower_deficit");
        number(out, rec.pik.tau_lower_deficit);
        out.key("tau_lower_kyfan");
        number(out, rec.pik.tau_lower_kyfan);
        out.key("tau_upper_kyfan");
        number(out, rec.pik.tau_upper_kyfan);
        out.key("tau_exact");
        number(out, rec.pik.witnesses.tau_exact);
        out.key("lambda1_MS");
        number(out, rec.pik.witnesses.lambda1_MS);
        out.key("best_lower");
        number(out, rec.best_lower);
        out.key("best_upper");
        number(out, rec.best_upper);
        string_array(out, "flags", rec.flags);
        out.key("bracket_violation");
        out.raw(rec.bracket_violation ? "true" : "false");
        out.raw("}");
    }
    out.raw("]");

    out.key("provenance");
    out.raw("{");
    out.key("input_hash");
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(report.provenance.input_hash));
        out.string(buf);
    }
    out.key("seed");
    number(out, report.provenance.seed);
    out.key("tool_version");
    out.string(report.provenance.tool_version);
    out.key("rank_tol");
    number(out, report.provenance.rank_tol);
    out.key("bracket_tol");
    number(out, report.provenance.bracket_tol);
    out.raw("}");

    out.key("any_violation");
    out.raw(report.any_violation ? "true" : "false");
    out.raw("}");
    return out.str;
}

void write_rank_frequency_csv(std::ostream& out,
                              const std::vector<std::pair<std::size_t, std::uint32_t>>& rf) {
    out << "rank,frequency\n";
    for (const auto& [rank, freq] : rf) out << rank << "," << freq << "\n";
}

void write_bounds_series_csv(std::ostream& out, const BoundReport& report) {
    out << "k,cos_theta,pi1,a1,a2,b1,b2,b3,c1,c2,c3,lp_lower,lp_upper,best_lower,best_upper\n";
    for (const PerKRecord& rec : report.per_k) {
        out << rec.k << "," << format_double(rec.cos_theta_exact) << ",";
        out << (rec.pi1_exact ? format_double(rec.pi1_exact->value) : "") << ",";
        out << format_double(rec.pik.a1) << ",";
        out << (rec.pik.a2 ? format_double(*rec.pik.a2) : "") << ",";
        out << format_double(rec.pik.b1) << ",";
        out << (rec.pik.b2 ? format_double(*rec.pik.b2) : "") << ",";
        out << format_double(std::max(rec.pik.b3_from_b1, rec.pik.b3_from_b2.value_or(0.0))) << ",";
        out << format_double(rec.pik.c1) << "," << format_double(rec.pik.c2) << ","
            << format_double(rec.pik.c3) << ",";
        out << format_double(rec.lp_lower_cos) << "," << format_double(rec.lp_upper_cos) << ",";
        out << format_double(rec.best_lower) << "," << format_double(rec.best_upper) << "\n";
    }
}

void write_sweep_aggregate_csv(std::ostream& out, const std::vector<SweepCellResult>& results) {
    out << "distribution,params,n,m,k,cos_theta,best_lower,best_upper,lp_lower,lp_upper\n";
    for (const SweepCellResult& cell : results) {
        if (!cell.report) continue;
        for (const PerKRecord& rec : cell.report->per_k) {
            out << to_string(cell.cell.distribution.kind) << ","
                << "\"" << params_to_string(cell.cell.distribution) << "\"," << cell.report->n
                << "," << cell.report->m << "," << rec.k << ","
                << format_double(rec.cos_theta_exact) << "," << format_double(rec.best_lower)
                << "," << format_double(rec.best_upper) << "," << format_double(rec.lp_lower_cos)
                << "," << format_double(rec.lp_upper_cos) << "\n";
        }
    }
}

} // namespace popalign
