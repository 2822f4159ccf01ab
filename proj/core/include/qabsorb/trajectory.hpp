#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qabsorb {

// Time grid plus named real or complex columns. Complex columns serialize as
// re_<name>,im_<name>.
class Trajectory {
public:
    using RealSeries = std::vector<double>;
    using ComplexSeries = std::vector<std::complex<double>>;

    struct Column {
        std::string name;
        std::variant<RealSeries, ComplexSeries> data;
    };

    Trajectory() = default;
    explicit Trajectory(std::vector<double> times) : times_(std::move(times)) {}

    const std::vector<double>& times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }

    // Throws InvalidParameter on length mismatch or duplicate name.
    void add_column(std::string name, RealSeries values);
    void add_column(std::string name, ComplexSeries values);

    bool has(const std::string& name) const;
    bool is_complex(const std::string& name) const;
    const RealSeries& real(const std::string& name) const;
    const ComplexSeries& complex(const std::string& name) const;
    const std::vector<Column>& columns() const noexcept { return columns_; }

    void set_meta(std::string key, std::string value);
    const std::vector<std::pair<std::string, std::string>>& meta() const noexcept {
        return meta_;
    }
    // Empty string if absent.
    std::string meta_value(const std::string& key) const;

    std::string to_csv() const;
    void write_csv(const std::filesystem::path& path) const;

private:
    const Column& find(const std::string& name) const;

    std::vector<double> times_;
    std::vector<Column> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

} // namespace qabsorb
