#include "grss/dataset_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grss {

void write_dataset(std::ostream& out, const GrssDataset& data,
                   std::optional<std::uint64_t> seed) {
    data.validate();
    out << "m=" << data.m << " r=" << data.r;
    if (seed) out << " seed=" << *seed;
    out << "\n";
    char buf[64];
    for (const auto& o : data.observations) {
        std::snprintf(buf, sizeof(buf), "%.12g", o.x);
        out << o.cycle << " " << o.rank << " " << buf;
        if (data.has_z) out << " " << o.z;
        out << "\n";
    }
}

GrssDataset read_dataset(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("dataset: empty input");
    GrssDataset data;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("m=", 0) == 0) data.m = std::stoi(tok.substr(2));
            else if (tok.rfind("r=", 0) == 0) data.r = std::stoi(tok.substr(2));
            else if (tok.rfind("seed=", 0) == 0) { /* informational */ }
            else throw std::runtime_error("dataset: bad header token '" + tok + "'");
        }
    }
    if (data.m < 1 || data.r < 1) throw std::runtime_error("dataset: header missing m= or r=");
    std::string line;
    bool saw_z = false, saw_no_z = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        GrssObservation o{};
        if (!(ls >> o.cycle >> o.rank >> o.x))
            throw std::runtime_error("dataset: bad observation line '" + line + "'");
        if (ls >> o.z) saw_z = true;
        else { o.z = 0; saw_no_z = true; }
        data.observations.push_back(o);
    }
    if (saw_z && saw_no_z) throw std::runtime_error("dataset: inconsistent z column");
    data.has_z = saw_z;
    data.validate();
    return data;
}

void write_dataset_file(const std::string& path, const GrssDataset& data,
                        std::optional<std::uint64_t> seed) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        write_dataset(out, data, seed);
    }
    std::filesystem::rename(tmp, path);
}

GrssDataset read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_dataset(in);
}

}  // namespace grss
