#include "qabsorb/trajectory.hpp"

#include <algorithm>

#include "qabsorb/csv.hpp"
#include "qabsorb/error.hpp"

namespace qabsorb {

void Trajectory::add_column(std::string name, RealSeries values) {
    if (values.size() != times_.size()) {
        throw InvalidParameter("Trajectory: column '" + name + "' has wrong length");
    }
    if (has(name)) {
        throw InvalidParameter("Trajectory: duplicate column '" + name + "'");
    }
    columns_.push_back({std::move(name), std::move(values)});
}

void Trajectory::add_column(std::string name, ComplexSeries values) {
    if (values.size() != times_.size()) {
        throw InvalidParameter("Trajectory: column '" + name + "' has wrong length");
    }
    if (has(name)) {
        throw InvalidParameter("Trajectory: duplicate column '" + name + "'");
    }
    columns_.push_back({std::move(name), std::move(values)});
}

bool Trajectory::has(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const Column& c) { return c.name == name; });
}

const Trajectory::Column& Trajectory::find(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c.name == name) return c;
    }
    throw InvalidParameter("Trajectory: no column '" + name + "'");
}

bool Trajectory::is_complex(const std::string& name) const {
    return std::holds_alternative<ComplexSeries>(find(name).data);
}

const Trajectory::RealSeries& Trajectory::real(const std::string& name) const {
    const auto& c = find(name);
    if (const auto* r = std::get_if<RealSeries>(&c.data)) return *r;
    throw InvalidParameter("Trajectory: column '" + name + "' is complex");
}

const Trajectory::ComplexSeries& Trajectory::complex(const std::string& name) const {
    const auto& c = find(name);
    if (const auto* z = std::get_if<ComplexSeries>(&c.data)) return *z;
    throw InvalidParameter("Trajectory: column '" + name + "' is real");
}

void Trajectory::set_meta(std::string key, std::string value) {
    for (auto& [k, v] : meta_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    meta_.emplace_back(std::move(key), std::move(value));
}

std::string Trajectory::meta_value(const std::string& key) const {
    for (const auto& [k, v] : meta_) {
        if (k == key) return v;
    }
    return {};
}

std::string Trajectory::to_csv() const {
    std::string out = "t";
    for (const auto& c : columns_) {
        if (std::holds_alternative<ComplexSeries>(c.data)) {
            out += ",re_" + c.name + ",im_" + c.name;
        } else {
            out += "," + c.name;
        }
    }
    out += '\n';
    for (std::size_t i = 0; i < times_.size(); ++i) {
        out += csv::format_double(times_[i]);
        for (const auto& c : columns_) {
            if (const auto* z = std::get_if<ComplexSeries>(&c.data)) {
                out += ',';
                out += csv::format_double((*z)[i].real());
                out += ',';
                out += csv::format_double((*z)[i].imag());
            } else {
                out += ',';
                out += csv::format_double(std::get<RealSeries>(c.data)[i]);
            }
        }
        out += '\n';
    }
    return out;
}

void Trajectory::write_csv(const std::filesystem::path& path) const {
    csv::write_atomic(path, to_csv());
}

} // namespace qabsorb
