#include "stripsar/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "stripsar/error.hpp"

namespace stripsar {

namespace {

constexpr char kMagic[8] = {'S', 'A', 'R', 'C', 'I', 'M', 'G', '1'};
constexpr std::uint64_t kVersion = 1;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key,
                    const std::string& path) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size())
            throw FormatError(path + ": trailing junk in value for " + key);
        return d;
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception&) {
        throw FormatError(path + ": bad numeric value for " + key);
    }
}

std::vector<char> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError(path + ": cannot open");
    f.seekg(0, std::ios::end);
    std::streamoff len = f.tellg();
    f.seekg(0, std::ios::beg);
    std::vector<char> buf(static_cast<std::size_t>(len));
    if (len > 0) f.read(buf.data(), len);
    if (!f) throw FormatError(path + ": short read");
    return buf;
}

}  // namespace

Sidecar load_sidecar(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError(path + ": cannot open");

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError(path + ": expected `key = value`, got: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw FormatError(path + ": empty key or value in: " + line);
        if (!kv.emplace(key, val).second)
            throw FormatError(path + ": duplicate key " + key);
    }

    Sidecar sc;
    auto take = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw FormatError(path + ": missing required key " + key);
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    sc.params.fc = parse_double(take("fc_hz"), "fc_hz", path);
    sc.params.fr = parse_double(take("fr_hz"), "fr_hz", path);
    sc.params.prf = parse_double(take("prf_hz"), "prf_hz", path);
    sc.params.beta = parse_double(take("beta_hz_per_s"), "beta_hz_per_s", path);
    sc.params.chirp = parse_double(take("chirp_s"), "chirp_s", path);
    sc.params.v = parse_double(take("v_mps"), "v_mps", path);
    sc.params.bandwidth = parse_double(take("bandwidth_hz"), "bandwidth_hz", path);
    sc.params.r0 = parse_double(take("r0_m"), "r0_m", path);
    double n_az = parse_double(take("n_az"), "n_az", path);
    double n_rg = parse_double(take("n_rg"), "n_rg", path);
    if (n_az < 1 || n_rg < 1 || n_az != std::floor(n_az) || n_rg != std::floor(n_rg))
        throw FormatError(path + ": n_az/n_rg must be positive integers");
    sc.n_az = static_cast<std::size_t>(n_az);
    sc.n_rg = static_cast<std::size_t>(n_rg);
    sc.sample_format = take("sample_format");
    if (sc.sample_format != "f32" && sc.sample_format != "i16" && sc.sample_format != "i8")
        throw FormatError(path + ": sample_format must be f32, i16, or i8");
    if (auto it = kv.find("sample_offset"); it != kv.end()) {
        sc.sample_offset = parse_double(it->second, "sample_offset", path);
        kv.erase(it);
    }
    if (!kv.empty())
        throw FormatError(path + ": unknown key " + kv.begin()->first);
    sc.params.validate();
    return sc;
}

void save_sidecar(const std::string& path, const Sidecar& sc) {
    std::ofstream f(path);
    if (!f) throw FormatError(path + ": cannot open for writing");
    f.precision(17);
    f << "fc_hz = " << sc.params.fc << "\n"
      << "fr_hz = " << sc.params.fr << "\n"
      << "prf_hz = " << sc.params.prf << "\n"
      << "beta_hz_per_s = " << sc.params.beta << "\n"
      << "chirp_s = " << sc.params.chirp << "\n"
      << "v_mps = " << sc.params.v << "\n"
      << "bandwidth_hz = " << sc.params.bandwidth << "\n"
      << "r0_m = " << sc.params.r0 << "\n"
      << "n_az = " << sc.n_az << "\n"
      << "n_rg = " << sc.n_rg << "\n"
      << "sample_format = " << sc.sample_format << "\n";
    if (sc.sample_offset != 0.0) f << "sample_offset = " << sc.sample_offset << "\n";
    if (!f) throw FormatError(path + ": write failed");
}

ComplexMatrix read_raw(const std::string& path, const Sidecar& sc) {
    std::size_t elem = sc.sample_format == "f32" ? 4 : (sc.sample_format == "i16" ? 2 : 1);
    std::size_t expect = sc.n_az * sc.n_rg * 2 * elem;
    std::vector<char> buf = read_file_bytes(path);
    if (buf.size() != expect)
        throw FormatError(path + ": size " + std::to_string(buf.size()) +
                          " does not match sidecar (" + std::to_string(expect) + " bytes)");

    ComplexMatrix m(sc.n_az, sc.n_rg);
    m.domain = Domain::signal;
    m.t0 = sc.t0();
    m.eta0 = 0.0;
    const std::size_t n = sc.n_az * sc.n_rg;
    const double off = sc.sample_offset;
    cplx* dst = m.data();
    if (sc.sample_format == "f32") {
        const float* s = reinterpret_cast<const float*>(buf.data());
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = cplx(static_cast<double>(s[2 * i]) - off,
                          static_cast<double>(s[2 * i + 1]) - off);
    } else if (sc.sample_format == "i16") {
        const std::int16_t* s = reinterpret_cast<const std::int16_t*>(buf.data());
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = cplx(static_cast<double>(s[2 * i]) - off,
                          static_cast<double>(s[2 * i + 1]) - off);
    } else {
        const std::int8_t* s = reinterpret_cast<const std::int8_t*>(buf.data());
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = cplx(static_cast<double>(s[2 * i]) - off,
                          static_cast<double>(s[2 * i + 1]) - off);
    }
    return m;
}

void write_raw_f32(const std::string& path, const ComplexMatrix& m) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError(path + ": cannot open for writing");
    std::vector<float> buf(m.size() * 2);
    const cplx* s = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) {
        buf[2 * i] = static_cast<float>(s[i].real());
        buf[2 * i + 1] = static_cast<float>(s[i].imag());
    }
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!f) throw FormatError(path + ": write failed");
}

void write_pgm(std::ostream& os, const GrayImage& img) {
    if (img.empty()) throw std::invalid_argument("write_pgm: empty image");
    os << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.data()),
             static_cast<std::streamsize>(img.size()));
    if (!os) throw FormatError("write_pgm: write failed");
}

void write_pgm(const std::string& path, const GrayImage& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError(path + ": cannot open for writing");
    write_pgm(f, img);
}

GrayImage read_pgm(const std::string& path) {
    std::vector<char> buf = read_file_bytes(path);
    std::size_t pos = 0;

    auto skip_space = [&]() {
        while (pos < buf.size()) {
            char ch = buf[pos];
            if (ch == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto token = [&]() {
        skip_space();
        std::size_t start = pos;
        while (pos < buf.size() && !std::isspace(static_cast<unsigned char>(buf[pos])))
            ++pos;
        if (start == pos) throw FormatError(path + ": truncated header");
        return std::string(buf.data() + start, pos - start);
    };

    if (token() != "P5") throw FormatError(path + ": not a binary PGM (P5)");
    auto parse_dim = [&](const std::string& t) {
        for (char ch : t)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw FormatError(path + ": bad header field " + t);
        return static_cast<std::size_t>(std::stoull(t));
    };
    std::size_t w = parse_dim(token());
    std::size_t h = parse_dim(token());
    std::size_t maxval = parse_dim(token());
    if (w == 0 || h == 0) throw FormatError(path + ": zero image dimension");
    if (maxval != 255) throw FormatError(path + ": only maxval 255 is supported");
    if (pos >= buf.size() || !std::isspace(static_cast<unsigned char>(buf[pos])))
        throw FormatError(path + ": missing separator after header");
    ++pos;  // single whitespace byte before the payload

    if (buf.size() - pos != w * h)
        throw FormatError(path + ": payload size mismatch");
    GrayImage img(w, h);
    std::memcpy(img.data(), buf.data() + pos, w * h);
    return img;
}

void write_complex(const std::string& path, const ComplexMatrix& m) {
    if (m.empty()) throw std::invalid_argument("write_complex: empty matrix");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError(path + ": cannot open for writing");

    char header[64] = {};
    std::memcpy(header, kMagic, 8);
    std::uint64_t version = kVersion;
    std::uint64_t n_az = m.n_az(), n_rg = m.n_rg();
    double t0 = m.t0, eta0 = m.eta0;
    std::uint64_t domain = static_cast<std::uint64_t>(m.domain);
    std::uint64_t reserved = 0;
    std::memcpy(header + 8, &version, 8);
    std::memcpy(header + 16, &n_az, 8);
    std::memcpy(header + 24, &n_rg, 8);
    std::memcpy(header + 32, &t0, 8);
    std::memcpy(header + 40, &eta0, 8);
    std::memcpy(header + 48, &domain, 8);
    std::memcpy(header + 56, &reserved, 8);
    f.write(header, sizeof(header));

    std::vector<float> buf(m.size() * 2);
    const cplx* s = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) {
        buf[2 * i] = static_cast<float>(s[i].real());
        buf[2 * i + 1] = static_cast<float>(s[i].imag());
    }
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!f) throw FormatError(path + ": write failed");
}

ComplexMatrix read_complex(const std::string& path) {
    std::vector<char> buf = read_file_bytes(path);
    if (buf.size() < 64) throw FormatError(path + ": truncated header");
    if (std::memcmp(buf.data(), kMagic, 8) != 0)
        throw FormatError(path + ": bad magic");
    std::uint64_t version, n_az, n_rg, domain, reserved;
    double t0, eta0;
    std::memcpy(&version, buf.data() + 8, 8);
    std::memcpy(&n_az, buf.data() + 16, 8);
    std::memcpy(&n_rg, buf.data() + 24, 8);
    std::memcpy(&t0, buf.data() + 32, 8);
    std::memcpy(&eta0, buf.data() + 40, 8);
    std::memcpy(&domain, buf.data() + 48, 8);
    std::memcpy(&reserved, buf.data() + 56, 8);
    if (version != kVersion)
        throw FormatError(path + ": unsupported version " + std::to_string(version));
    if (domain > 3) throw FormatError(path + ": bad domain tag");
    if (n_az == 0 || n_rg == 0) throw FormatError(path + ": empty matrix");
    std::size_t expect = 64 + n_az * n_rg * 2 * sizeof(float);
    if (buf.size() != expect) throw FormatError(path + ": payload size mismatch");

    ComplexMatrix m(n_az, n_rg);
    m.t0 = t0;
    m.eta0 = eta0;
    m.domain = static_cast<Domain>(domain);
    const float* s = reinterpret_cast<const float*>(buf.data() + 64);
    cplx* dst = m.data();
    for (std::size_t i = 0; i < m.size(); ++i)
        dst[i] = cplx(s[2 * i], s[2 * i + 1]);
    return m;
}

std::vector<PointTarget> load_scene(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError(path + ": cannot open");
    std::vector<PointTarget> targets;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ss(line);
        double re, im, r0, eta_c, aperture;
        if (!(ss >> re >> im >> r0 >> eta_c >> aperture))
            throw FormatError(path + ":" + std::to_string(lineno) +
                              ": expected `sigma_re sigma_im r0_m eta_c_s aperture_s`");
        std::string rest;
        if (ss >> rest)
            throw FormatError(path + ":" + std::to_string(lineno) + ": trailing junk");
        PointTarget t;
        t.sigma = cplx(re, im);
        t.r0 = r0;
        t.eta_c = eta_c;
        t.aperture_time = aperture;
        targets.push_back(t);
    }
    if (targets.empty())
        throw FormatError(path + ": no targets");
    return targets;
}

}  // namespace stripsar
