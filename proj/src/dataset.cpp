#include "ridgeline/dataset.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "csv_util.hpp"
#include "ridgeline/errors.hpp"
#include "ridgeline/io.hpp"

namespace ridgeline {

using detail::split_csv_line;
using detail::trim;

Manifest load_manifest(const std::filesystem::path& path) {
    auto lines = detail::read_lines(path, "manifest");
    Manifest manifest;
    manifest.name = path.stem().string();
    std::filesystem::path base = path.parent_path();
    std::set<std::string> ids;

    for (size_t li = 0; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        int line_no = static_cast<int>(li) + 1;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (manifest.provenance.empty()) manifest.provenance = trim(t.substr(1));
            continue;
        }
        auto fields = split_csv_line(line);
        if (trim(fields[0]) == "print_id") continue;  // header row
        if (fields.size() != 4)
            throw DataError("manifest: line " + std::to_string(line_no) +
                            ": expected 4 fields (print_id,class,minutiae_path,image_path)");
        PrintRecord rec;
        rec.print_id = trim(fields[0]);
        if (rec.print_id.empty())
            throw DataError("manifest: line " + std::to_string(line_no) + ": empty print_id");
        if (!ids.insert(rec.print_id).second)
            throw DataError("manifest: line " + std::to_string(line_no) + ": duplicate print_id '" +
                            rec.print_id + "'");
        std::string cls = trim(fields[1]);
        auto label = cls.size() == 1 ? class_from_token(cls[0]) : std::nullopt;
        if (!label)
            throw DataError("manifest: line " + std::to_string(line_no) + ": unknown class token '" +
                            cls + "' (expected A, L, or W)");
        rec.label = *label;
        std::string mp = trim(fields[2]);
        std::string ip = trim(fields[3]);
        if (mp.empty() && ip.empty())
            throw DataError("manifest: line " + std::to_string(line_no) +
                            ": both minutiae_path and image_path missing for '" + rec.print_id + "'");
        auto resolve = [&base](const std::string& p) {
            std::filesystem::path fp(p);
            return fp.is_absolute() ? fp : base / fp;
        };
        if (!mp.empty()) rec.minutiae_path = resolve(mp);
        if (!ip.empty()) rec.image_path = resolve(ip);
        manifest.records.push_back(std::move(rec));
    }
    return manifest;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ostringstream out;
    if (!manifest.provenance.empty()) out << "# " << manifest.provenance << "\n";
    out << "print_id,class,minutiae_path,image_path\n";
    for (const PrintRecord& rec : manifest.records) {
        out << rec.print_id << ',' << class_token(rec.label) << ','
            << (rec.minutiae_path ? rec.minutiae_path->generic_string() : "") << ','
            << (rec.image_path ? rec.image_path->generic_string() : "") << '\n';
    }
    atomic_write_text(path, out.str());
}

MinutiaCloud load_minutiae_csv(const std::filesystem::path& path, const std::string& print_id) {
    auto lines = detail::read_lines(path, "minutiae");
    MinutiaCloud cloud;
    cloud.print_id = print_id;
    for (size_t li = 0; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        int line_no = static_cast<int>(li) + 1;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw DataError("minutiae: " + path.string() + ": line " + std::to_string(line_no) +
                            ": expected 3 fields (x,y,theta_degrees)");
        double x;
        if (li == 0 && !detail::try_parse_double(fields[0], x)) continue;  // header row
        RawMinutia m;
        m.x = detail::parse_double(fields[0], "minutiae: " + path.string(), line_no);
        m.y = detail::parse_double(fields[1], "minutiae: " + path.string(), line_no);
        double theta = detail::parse_double(fields[2], "minutiae: " + path.string(), line_no);
        theta = std::fmod(theta, 360.0);
        if (theta < 0.0) theta += 360.0;
        m.theta_deg = theta;
        cloud.points.push_back(m);
    }
    if (cloud.points.empty())
        throw DataError("minutiae: " + path.string() + ": no minutiae rows");
    return cloud;
}

void save_minutiae_csv(const MinutiaCloud& cloud, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "x,y,theta_degrees\n";
    for (const RawMinutia& m : cloud.points)
        out << format_double(m.x) << ',' << format_double(m.y) << ',' << format_double(m.theta_deg)
            << '\n';
    atomic_write_text(path, out.str());
}

namespace {

// PGM header token reader: skips whitespace and '#' comments.
std::string next_pgm_token(std::istream& in) {
    std::string token;
    while (in) {
        int c = in.get();
        if (c == EOF) break;
        if (c == '#') {
            while (in && in.get() != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!token.empty()) break;
            continue;
        }
        token.push_back(static_cast<char>(c));
    }
    return token;
}

int parse_pgm_int(std::istream& in, const std::string& path, const char* what) {
    std::string token = next_pgm_token(in);
    try {
        size_t pos = 0;
        int v = std::stoi(token, &pos);
        if (pos != token.size() || v < 0) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw DataError("pgm: " + path + ": bad " + what + " field");
    }
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("pgm: cannot open '" + path.string() + "'");
    std::string magic = next_pgm_token(in);
    if (magic != "P5" && magic != "P2")
        throw DataError("pgm: " + path.string() + ": not a PGM file (magic '" + magic + "')");
    int cols = parse_pgm_int(in, path.string(), "width");
    int rows = parse_pgm_int(in, path.string(), "height");
    int maxval = parse_pgm_int(in, path.string(), "maxval");
    if (cols < 1 || rows < 1) throw DataError("pgm: " + path.string() + ": empty image");
    if (maxval < 1 || maxval > 255)
        throw DataError("pgm: " + path.string() + ": only 8-bit images supported (maxval " +
                        std::to_string(maxval) + ")");

    GrayImage img(rows, cols);
    if (magic == "P5") {
        std::vector<unsigned char> buf(img.pixel_count());
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() != static_cast<std::streamsize>(buf.size()))
            throw DataError("pgm: " + path.string() + ": truncated pixel data");
        for (size_t i = 0; i < buf.size(); ++i) img.values[i] = buf[i];
    } else {
        for (size_t i = 0; i < img.pixel_count(); ++i) {
            int v = parse_pgm_int(in, path.string(), "pixel");
            if (v > maxval) throw DataError("pgm: " + path.string() + ": pixel above maxval");
            img.values[i] = v;
        }
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::string content;
    content.reserve(img.pixel_count() + 32);
    content += "P5\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n255\n";
    for (double v : img.values) {
        double clamped = std::min(255.0, std::max(0.0, v));
        content.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(clamped))));
    }
    atomic_write_text(path, content);
}

GrayImage load_png(const std::filesystem::path& path) {
    std::FILE* fp = std::fopen(path.string().c_str(), "rb");
    if (!fp) throw DataError("png: cannot open '" + path.string() + "'");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw DataError("png: out of memory");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw DataError("png: " + path.string() + ": decode failed");
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    png_uint_32 width = png_get_image_width(png, info);
    png_uint_32 height = png_get_image_height(png, info);
    png_byte color_type = png_get_color_type(png, info);
    png_byte bit_depth = png_get_bit_depth(png, info);

    // Normalize every input to 8-bit grayscale.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
        color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);

    GrayImage img(static_cast<int>(height), static_cast<int>(width));
    std::vector<unsigned char> row(png_get_rowbytes(png, info));
    for (png_uint_32 r = 0; r < height; ++r) {
        png_read_row(png, row.data(), nullptr);
        for (png_uint_32 c = 0; c < width; ++c)
            img.at(static_cast<int>(r), static_cast<int>(c)) = row[c];
    }
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

GrayImage load_gray_image(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == ".pgm") return load_pgm(path);
    if (ext == ".png") return load_png(path);
    throw DataError("image: unsupported extension '" + ext + "' for '" + path.string() +
                    "' (expected .pgm or .png)");
}

}  // namespace ridgeline
