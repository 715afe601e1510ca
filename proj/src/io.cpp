#include "ridgeline/io.hpp"

#include <unistd.h>

#include <charconv>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "csv_util.hpp"
#include "ridgeline/errors.hpp"
#include "ridgeline/features.hpp"

namespace ridgeline {

using detail::split_csv_line;
using detail::trim;
using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw InternalError("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::vector<BarcodeRecord> flatten_barcodes(const std::string& print_id,
                                            const std::vector<LabeledBarcode>& barcodes) {
    std::vector<BarcodeRecord> records;
    for (const LabeledBarcode& lb : barcodes)
        for (const Bar& bar : lb.barcode.bars)
            records.push_back({print_id, lb.source, lb.barcode.dim, bar.birth, bar.death});
    return records;
}

void write_barcodes_csv(const std::filesystem::path& path,
                        std::span<const BarcodeRecord> records) {
    std::ostringstream out;
    out << "# " << kBarcodeSchema << "\n";
    out << "print_id,source,dim,birth,death\n";
    for (const BarcodeRecord& r : records)
        out << r.print_id << ',' << r.source << ',' << r.dim << ',' << format_double(r.birth) << ','
            << format_double(r.death) << '\n';
    atomic_write_text(path, out.str());
}

namespace {

void validate_barcode_record(const BarcodeRecord& r, const std::string& context, int line_no) {
    auto fail = [&](const std::string& msg) {
        throw DataError(context + ": line " + std::to_string(line_no) + ": " + msg);
    };
    if (r.print_id.empty()) fail("empty print_id");
    if (!is_minutiae_source(r.source) && !is_image_source(r.source))
        fail("unknown barcode source '" + r.source + "'");
    if (r.dim != 0 && r.dim != 1) fail("dim must be 0 or 1");
    if (!(r.birth <= r.death)) fail("birth must not exceed death");
}

}  // namespace

std::vector<BarcodeRecord> read_barcodes_csv(const std::filesystem::path& path) {
    auto lines = detail::read_lines(path, "barcodes");
    std::string context = "barcodes: " + path.string();
    if (lines.empty() || trim(lines[0]) != "# " + std::string(kBarcodeSchema))
        throw DataError(context + ": missing schema header '# " + std::string(kBarcodeSchema) + "'");
    std::vector<BarcodeRecord> records;
    for (size_t li = 1; li < lines.size(); ++li) {
        int line_no = static_cast<int>(li) + 1;
        std::string t = trim(lines[li]);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv_line(lines[li]);
        if (trim(fields[0]) == "print_id") continue;
        if (fields.size() != 5)
            throw DataError(context + ": line " + std::to_string(line_no) + ": expected 5 fields");
        BarcodeRecord r;
        r.print_id = trim(fields[0]);
        r.source = trim(fields[1]);
        r.dim = static_cast<int>(detail::parse_double(fields[2], context, line_no));
        r.birth = detail::parse_double(fields[3], context, line_no);
        r.death = detail::parse_double(fields[4], context, line_no);
        validate_barcode_record(r, context, line_no);
        records.push_back(std::move(r));
    }
    return records;
}

void write_barcodes_json(const std::filesystem::path& path,
                         std::span<const BarcodeRecord> records) {
    json doc;
    doc["schema"] = kBarcodeSchema;
    json arr = json::array();
    for (const BarcodeRecord& r : records)
        arr.push_back({{"print_id", r.print_id},
                       {"source", r.source},
                       {"dim", r.dim},
                       {"birth", r.birth},
                       {"death", r.death}});
    doc["records"] = std::move(arr);
    atomic_write_text(path, doc.dump(2) + "\n");
}

std::vector<BarcodeRecord> read_barcodes_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string context = "barcodes: " + path.string();
    if (!in) throw DataError(context + ": cannot open");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(context + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kBarcodeSchema)
        throw DataError(context + ": missing schema tag '" + std::string(kBarcodeSchema) + "'");
    std::vector<BarcodeRecord> records;
    int line_no = 0;
    try {
        for (const json& item : doc.at("records")) {
            ++line_no;
            BarcodeRecord r{item.at("print_id").get<std::string>(),
                            item.at("source").get<std::string>(), item.at("dim").get<int>(),
                            item.at("birth").get<double>(), item.at("death").get<double>()};
            validate_barcode_record(r, context, line_no);
            records.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw DataError(context + ": malformed record: " + e.what());
    }
    return records;
}

std::vector<LabeledBarcode> barcodes_from_records(std::span<const BarcodeRecord> records) {
    std::vector<LabeledBarcode> out;
    std::map<std::pair<std::string, int>, size_t> index;
    for (const BarcodeRecord& r : records) {
        auto key = std::make_pair(r.source, r.dim);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, out.size());
            out.push_back({r.source, Barcode{r.dim, 0.0, {}}});
            it = index.find(key);
        }
        out[it->second].barcode.bars.push_back({r.birth, r.death});
    }
    return out;
}

void write_features_csv(const std::filesystem::path& path, const FeatureTable& table) {
    std::ostringstream out;
    out << "# " << kFeatureSchema << "\n";
    out << "print_id,class";
    for (const std::string& name : table.matrix.names) out << ',' << name;
    out << '\n';
    for (size_t i = 0; i < table.print_ids.size(); ++i) {
        out << table.print_ids[i] << ',' << class_token(table.labels[i]);
        for (int j = 0; j < table.matrix.cols(); ++j)
            out << ',' << format_double(table.matrix.X(static_cast<Eigen::Index>(i), j));
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

FeatureTable read_features_csv(const std::filesystem::path& path) {
    auto lines = detail::read_lines(path, "features");
    std::string context = "features: " + path.string();
    if (lines.empty() || trim(lines[0]) != "# " + std::string(kFeatureSchema))
        throw DataError(context + ": missing schema header '# " + std::string(kFeatureSchema) + "'");
    if (lines.size() < 2) throw DataError(context + ": missing header row");
    auto header = split_csv_line(lines[1]);
    if (header.size() < 3 || trim(header[0]) != "print_id" || trim(header[1]) != "class")
        throw DataError(context + ": header must start with print_id,class");

    FeatureTable table;
    for (size_t j = 2; j < header.size(); ++j) table.matrix.names.push_back(trim(header[j]));
    const size_t p = table.matrix.names.size();

    std::vector<std::vector<double>> rows;
    for (size_t li = 2; li < lines.size(); ++li) {
        int line_no = static_cast<int>(li) + 1;
        std::string t = trim(lines[li]);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv_line(lines[li]);
        if (fields.size() != p + 2)
            throw DataError(context + ": line " + std::to_string(line_no) + ": expected " +
                            std::to_string(p + 2) + " fields, got " + std::to_string(fields.size()));
        table.print_ids.push_back(trim(fields[0]));
        std::string cls = trim(fields[1]);
        auto label = cls.size() == 1 ? class_from_token(cls[0]) : std::nullopt;
        if (!label)
            throw DataError(context + ": line " + std::to_string(line_no) + ": unknown class '" +
                            cls + "'");
        table.labels.push_back(*label);
        std::vector<double> row(p);
        for (size_t j = 0; j < p; ++j)
            row[j] = detail::parse_double(fields[j + 2], context, line_no);
        rows.push_back(std::move(row));
    }
    table.matrix.X.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < p; ++j)
            table.matrix.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return table;
}

void write_features_json(const std::filesystem::path& path, const FeatureTable& table) {
    json doc;
    doc["schema"] = kFeatureSchema;
    doc["features"] = table.matrix.names;
    json prints = json::array();
    for (size_t i = 0; i < table.print_ids.size(); ++i) {
        json row;
        row["print_id"] = table.print_ids[i];
        row["class"] = std::string(1, class_token(table.labels[i]));
        std::vector<double> values(table.matrix.cols());
        for (int j = 0; j < table.matrix.cols(); ++j)
            values[j] = table.matrix.X(static_cast<Eigen::Index>(i), j);
        row["values"] = values;
        prints.push_back(std::move(row));
    }
    doc["prints"] = std::move(prints);
    atomic_write_text(path, doc.dump(2) + "\n");
}

FeatureTable read_features_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string context = "features: " + path.string();
    if (!in) throw DataError(context + ": cannot open");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(context + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kFeatureSchema)
        throw DataError(context + ": missing schema tag '" + std::string(kFeatureSchema) + "'");
    FeatureTable table;
    try {
        table.matrix.names = doc.at("features").get<std::vector<std::string>>();
        const size_t p = table.matrix.names.size();
        const json& prints = doc.at("prints");
        table.matrix.X.resize(static_cast<Eigen::Index>(prints.size()),
                              static_cast<Eigen::Index>(p));
        Eigen::Index i = 0;
        for (const json& row : prints) {
            table.print_ids.push_back(row.at("print_id").get<std::string>());
            std::string cls = row.at("class").get<std::string>();
            auto label = cls.size() == 1 ? class_from_token(cls[0]) : std::nullopt;
            if (!label) throw DataError(context + ": unknown class '" + cls + "'");
            table.labels.push_back(*label);
            auto values = row.at("values").get<std::vector<double>>();
            if (values.size() != p) throw DataError(context + ": row width mismatch");
            for (size_t j = 0; j < p; ++j)
                table.matrix.X(i, static_cast<Eigen::Index>(j)) = values[j];
            ++i;
        }
    } catch (const json::exception& e) {
        throw DataError(context + ": malformed document: " + e.what());
    }
    return table;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("write: cannot open '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("write: failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

}  // namespace ridgeline
