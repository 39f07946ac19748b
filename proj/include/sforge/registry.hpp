#pragma once

#include "sforge/bases.hpp"

#include <optional>

namespace sforge {

class UnknownModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Builds a model from its registry name:
//   E, L, Lq:<r>, Pi, G, Sigma, Sigmaq:<r>, SigmaHat:<k>,
//   dual:<name>, had:<name>,<name>, Q:<name>, P:<name>.
inline ModelPtr make_model(std::string_view name) {
    auto after = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (name.substr(0, prefix.size()) == prefix) return name.substr(prefix.size());
        return std::nullopt;
    };
    if (name == "E") return std::make_shared<ExpModel>();
    if (name == "L") return std::make_shared<LinearModel>();
    if (name == "Pi") return std::make_shared<PartitionModel>();
    if (name == "G") return std::make_shared<GraphModel>();
    if (name == "Sigma") return std::make_shared<FaceModel>();
    if (auto r = after("Lq:")) return std::make_shared<LinearModel>(Rational::parse(*r));
    if (auto r = after("Sigmaq:")) return std::make_shared<FaceModel>(Rational::parse(*r));
    if (auto r = after("SigmaHat:")) {
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(std::string(*r), &used);
            if (used != r->size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UnknownModel("bad block bound in '" + std::string(name) + "'");
        }
        return std::make_shared<DecompositionModel>(k);
    }
    if (auto r = after("dual:")) return std::make_shared<DualModel>(make_model(*r));
    if (auto r = after("Q:")) return q_view(make_model(*r));
    if (auto r = after("P:")) {
        // Accept both P:<name> and the view's own name P:dual:<name>.
        if (r->substr(0, 5) == "dual:") r = r->substr(5);
        return p_view(make_model(*r));
    }
    if (auto r = after("had:")) {
        for (std::size_t i = 0; i < r->size(); ++i) {
            if ((*r)[i] != ',') continue;
            try {
                return std::make_shared<HadamardModel>(make_model(r->substr(0, i)), make_model(r->substr(i + 1)));
            } catch (const UnknownModel&) {
            }
        }
        throw UnknownModel("cannot split hadamard factors in '" + std::string(name) + "'");
    }
    throw UnknownModel("unknown model '" + std::string(name) + "'");
}

}  // namespace sforge
