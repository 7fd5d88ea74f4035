#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nucpol/errors.hpp"

namespace nucpol {

// Sampled trace of some observable. `metadata` carries free-form context
// (model parameters, tolerances) for downstream fitting and file emission.
template <class T>
struct TimeSeries {
    std::vector<double> t;
    std::vector<T> values;
    std::map<std::string, std::string> metadata;

    std::size_t size() const noexcept { return t.size(); }
    bool empty() const noexcept { return t.empty(); }

    void reserve(std::size_t n) {
        t.reserve(n);
        values.reserve(n);
    }

    void push_back(double time, T value) {
        t.push_back(time);
        values.push_back(std::move(value));
    }

    template <class F>
    auto map(F&& f) const -> TimeSeries<std::invoke_result_t<F, const T&>> {
        TimeSeries<std::invoke_result_t<F, const T&>> out;
        out.t = t;
        out.metadata = metadata;
        out.values.reserve(values.size());
        for (const auto& v : values) out.values.push_back(f(v));
        return out;
    }
};

} // namespace nucpol
