#include "wamsley/pc_json.hpp"

#include "json.hpp"

namespace wamsley {

using nlohmann::json;

namespace {

json word_json(const Word& w) {
    json a = json::array();
    for (const auto& [g, e] : w) a.push_back({g + 1, e});
    return a;
}

Word json_word(const json& a, int n) {
    Word w;
    for (const auto& s : a) {
        int g = s.at(0).get<int>() - 1;
        if (g < 0 || g >= n) throw Error(ErrorKind::Parse, "generator index out of range");
        w.emplace_back(g, s.at(1).get<Exp>());
    }
    return w;
}

bool is_default_conj(const Word& w, int j) { return w.size() == 1 && w[0].first == j && w[0].second == 1; }

}  // namespace

std::string pc_to_json(const PcPresentation& P) {
    json doc;
    doc["generators"] = P.names;
    json ro = json::array();
    for (Exp r : P.rel_orders) ro.push_back(r == 0 ? json("inf") : json(r));
    doc["relOrders"] = ro;
    json pw = json::object();
    for (int i = 0; i < P.size(); ++i)
        if (!P.powers[i].empty()) pw[std::to_string(i + 1)] = word_json(P.powers[i]);
    doc["powers"] = pw;
    json cj = json::object();
    for (int i = 0; i < P.size(); ++i)
        for (int j = i + 1; j < P.size(); ++j) {
            if (!is_default_conj(P.conj(j, i), j))
                cj[std::to_string(j + 1) + "^" + std::to_string(i + 1)] = word_json(P.conj(j, i));
            if (!is_default_conj(P.conj_inv(j, i), j))
                cj[std::to_string(j + 1) + "^-" + std::to_string(i + 1)] = word_json(P.conj_inv(j, i));
        }
    doc["conjugates"] = cj;
    if (!P.labels.empty()) {
        json lb = json::object();
        for (const auto& [k, v] : P.labels) lb[k] = v;
        doc["labels"] = lb;
    }
    return doc.dump(2) + "\n";
}

PcPresentation pc_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    try {
        auto names = doc.at("generators").get<std::vector<std::string>>();
        const int n = static_cast<int>(names.size());
        PcPresentation P(n);
        P.names = names;
        const auto& ro = doc.at("relOrders");
        if (static_cast<int>(ro.size()) != n) throw Error(ErrorKind::Parse, "relOrders length mismatch");
        for (int i = 0; i < n; ++i) P.rel_orders[i] = ro[i].is_string() ? 0 : ro[i].get<Exp>();
        bool explicit_inverse = false;
        if (doc.contains("powers"))
            for (const auto& [k, v] : doc["powers"].items()) {
                int i = std::stoi(k) - 1;
                if (i < 0 || i >= n) throw Error(ErrorKind::Parse, "power index out of range");
                P.powers[i] = json_word(v, n);
            }
        if (doc.contains("conjugates"))
            for (const auto& [k, v] : doc["conjugates"].items()) {
                auto pos = k.find('^');
                if (pos == std::string::npos) throw Error(ErrorKind::Parse, "bad conjugate key " + k);
                int j = std::stoi(k.substr(0, pos)) - 1;
                std::string rest = k.substr(pos + 1);
                bool inv = !rest.empty() && rest[0] == '-';
                int i = std::stoi(inv ? rest.substr(1) : rest) - 1;
                if (i < 0 || j <= i || j >= n) throw Error(ErrorKind::Parse, "bad conjugate key " + k);
                if (inv) {
                    P.conj_inv(j, i) = json_word(v, n);
                    explicit_inverse = true;
                } else {
                    P.conj(j, i) = json_word(v, n);
                }
            }
        if (doc.contains("labels"))
            for (const auto& [k, v] : doc["labels"].items()) P.labels[k] = v.get<Elem>();
        P.finalize(!explicit_inverse);
        return P;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

}  // namespace wamsley
