#include "aswn/svg.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace aswn {

std::string svg_plot(const std::vector<std::pair<std::string, Polygon>>& series,
                     const std::string& title) {
    const double W = 640, H = 480, ML = 60, MR = 20, MT = 40, MB = 40;
    double xmax = 1, ymax = 1;
    for (const auto& [name, P] : series) {
        for (const auto& v : P.v) {
            xmax = std::max(xmax, static_cast<double>(v.x));
            ymax = std::max(ymax, v.y.get_d());
        }
    }
    auto sx = [&](double x) { return ML + x / xmax * (W - ML - MR); };
    auto sy = [&](double y) { return H - MB - y / ymax * (H - MT - MB); };

    static const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e"};
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
    // axes
    os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
       << H - MB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
       << "\" stroke=\"black\"/>\n";

    size_t ci = 0;
    double ly = MT + 10;
    for (const auto& [name, P] : series) {
        const char* col = colors[ci % 5];
        if (P.v.size() >= 2) {
            os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& v : P.v)
                os << sx(static_cast<double>(v.x)) << "," << sy(v.y.get_d()) << " ";
            os << "\"/>\n";
        }
        for (const auto& v : P.v) {
            os << "<circle cx=\"" << sx(static_cast<double>(v.x)) << "\" cy=\"" << sy(v.y.get_d())
               << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        }
        os << "<rect x=\"" << W - 150 << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\""
           << col << "\"/>\n";
        os << "<text x=\"" << W - 135 << "\" y=\"" << ly << "\" font-size=\"12\">" << name
           << "</text>\n";
        ly += 16;
        ++ci;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace aswn
