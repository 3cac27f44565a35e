#include "synapse/panel_document.hpp"

namespace synapse {

PanelDocument validate_document(const RawPanelDocument& raw) {
    PanelDocument doc{validate_panel(raw.panel), raw.meta, {}};
    if (raw.backtest.empty()) return doc;

    const auto& panel = doc.panel;
    if (raw.backtest.size() != panel.model_count())
        throw AlignmentMismatch("backtest covers " + std::to_string(raw.backtest.size()) +
                                " models, panel has " + std::to_string(panel.model_count()));
    const std::size_t steps = raw.backtest.front().size();
    if (steps > panel.context().size())
        throw AlignmentMismatch("backtest is longer than the context");
    doc.backtest.reserve(raw.backtest.size());
    for (std::size_t i = 0; i < raw.backtest.size(); ++i) {
        const auto& rows = raw.backtest[i];
        const auto& name = panel.models()[i].name;
        if (rows.size() != steps) throw AlignmentMismatch("backtest lengths differ between models");
        std::vector<QuantileForecast> validated;
        validated.reserve(rows.size());
        for (std::size_t b = 0; b < rows.size(); ++b) {
            if (rows[b].size() != panel.levels().size())
                throw DimensionMismatch("backtest row of model '" + name + "' has the wrong number of quantiles");
            if (auto bad = find_monotonicity_violation(rows[b])) throw NonMonotoneQuantiles(*bad, name, b);
            validated.emplace_back(panel.levels(), rows[b]);
        }
        doc.backtest.push_back(std::move(validated));
    }
    return doc;
}

PanelDocument PanelDocument::with_models(std::span<const std::string> names) const {
    PanelDocument out{panel.with_models(names), meta, {}};
    if (backtest.empty()) return out;
    for (const auto& name : names) out.backtest.push_back(backtest[*panel.model_index(name)]);
    return out;
}

RawPanelDocument PanelDocument::to_raw() const {
    RawPanelDocument raw{panel.to_raw(), meta, {}};
    for (const auto& per_model : backtest) {
        std::vector<std::vector<double>> rows;
        for (const auto& q : per_model) rows.emplace_back(q.values().begin(), q.values().end());
        raw.backtest.push_back(std::move(rows));
    }
    return raw;
}

} // namespace synapse
