#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "stripsar/error.hpp"
#include "stripsar/io.hpp"
#include "test_util.hpp"

using namespace stripsar;

namespace {

// Unique-ish scratch path per test file run; cleaned up by each case.
std::string tmp_path(const std::string& name) {
    return "io_test_" + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

void write_bytes(const std::string& path, const std::vector<char>& bytes) {
    std::ofstream f(path, std::ios::binary);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

struct Cleanup {
    std::string path;
    ~Cleanup() { std::remove(path.c_str()); }
};

std::string valid_sidecar_text() {
    return "# synthetic capture\n"
           "fc_hz = 5.3e9\n"
           "fr_hz = 18.97e6\n"
           "prf_hz = 1679\n"
           "beta_hz_per_s = 4.19002695417790e11\n"
           "chirp_s = 37.1e-6\n"
           "v_mps = 7120\n"
           "bandwidth_hz = 15.545e6\n"
           "r0_m = 830900\n"
           "n_az = 4\n"
           "n_rg = 3\n"
           "sample_format = i8\n";
}

}  // namespace

TEST_CASE("sidecar parses keys, comments, and blank lines") {
    Cleanup c{tmp_path("sc1")};
    write_text(c.path, valid_sidecar_text() + "\n# trailing comment\n");
    Sidecar sc = load_sidecar(c.path);
    CHECK(sc.params.fc == doctest::Approx(5.3e9));
    CHECK(sc.params.prf == doctest::Approx(1679.0));
    CHECK(sc.n_az == 4);
    CHECK(sc.n_rg == 3);
    CHECK(sc.sample_format == "i8");
    CHECK(sc.sample_offset == 0.0);
    CHECK(sc.t0() == doctest::Approx(2.0 * 830900.0 / kSpeedOfLight).epsilon(1e-14));
}

TEST_CASE("sidecar round-trips through save and load") {
    Cleanup c{tmp_path("sc2")};
    Sidecar sc;
    sc.params = RadarParams::ers2();
    sc.n_az = 128;
    sc.n_rg = 64;
    sc.sample_format = "i16";
    sc.sample_offset = 15.5;
    save_sidecar(c.path, sc);
    Sidecar got = load_sidecar(c.path);
    CHECK(got.params.fc == sc.params.fc);
    CHECK(got.params.beta == sc.params.beta);
    CHECK(got.n_az == sc.n_az);
    CHECK(got.n_rg == sc.n_rg);
    CHECK(got.sample_format == "i16");
    CHECK(got.sample_offset == 15.5);
}

TEST_CASE("sidecar rejects malformed input") {
    Cleanup c{tmp_path("sc3")};
    SUBCASE("missing key") {
        write_text(c.path, "fc_hz = 5.3e9\n");
        CHECK_THROWS_AS(load_sidecar(c.path), FormatError);
    }
    SUBCASE("unknown key") {
        write_text(c.path, valid_sidecar_text() + "bogus = 1\n");
        CHECK_THROWS_AS(load_sidecar(c.path), FormatError);
    }
    SUBCASE("duplicate key") {
        write_text(c.path, valid_sidecar_text() + "fc_hz = 5.3e9\n");
        CHECK_THROWS_AS(load_sidecar(c.path), FormatError);
    }
    SUBCASE("bad number") {
        std::string text = valid_sidecar_text();
        text.replace(text.find("1679"), 4, "17x9");
        write_text(c.path, text);
        CHECK_THROWS_AS(load_sidecar(c.path), FormatError);
    }
    SUBCASE("bad sample format") {
        std::string text = valid_sidecar_text();
        text.replace(text.find("i8"), 2, "u9");
        write_text(c.path, text);
        CHECK_THROWS_AS(load_sidecar(c.path), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_sidecar("no_such_file_anywhere"), FormatError);
    }
}

TEST_CASE("read_raw decodes i8 interleaved pairs") {
    Cleanup sc_c{tmp_path("sc4")};
    Cleanup raw_c{tmp_path("raw4")};
    write_text(sc_c.path, valid_sidecar_text());
    // 4x3 image, 24 bytes: sample k holds (2k+1, 2k+2).
    std::vector<char> bytes;
    for (int k = 0; k < 12; ++k) {
        bytes.push_back(static_cast<char>(2 * k + 1));
        bytes.push_back(static_cast<char>(2 * k + 2));
    }
    write_bytes(raw_c.path, bytes);
    Sidecar sc = load_sidecar(sc_c.path);
    ComplexMatrix m = read_raw(raw_c.path, sc);
    CHECK(m.n_az() == 4);
    CHECK(m.n_rg() == 3);
    CHECK(m.at(0, 0) == cplx(1.0, 2.0));
    CHECK(m.at(0, 1) == cplx(3.0, 4.0));
    CHECK(m.at(3, 2) == cplx(23.0, 24.0));
    CHECK(m.domain == Domain::signal);
    CHECK(m.t0 == doctest::Approx(sc.t0()));
    CHECK(m.eta0 == 0.0);
}

TEST_CASE("read_raw subtracts the sample offset") {
    Cleanup sc_c{tmp_path("sc5")};
    Cleanup raw_c{tmp_path("raw5")};
    write_text(sc_c.path, valid_sidecar_text() + "sample_offset = 10\n");
    std::vector<char> bytes(24, 10);
    write_bytes(raw_c.path, bytes);
    Sidecar sc = load_sidecar(sc_c.path);
    ComplexMatrix m = read_raw(raw_c.path, sc);
    CHECK(m.at(0, 0) == cplx(0.0, 0.0));
    CHECK(m.at(3, 2) == cplx(0.0, 0.0));
}

TEST_CASE("read_raw rejects size mismatches") {
    Cleanup sc_c{tmp_path("sc6")};
    Cleanup raw_c{tmp_path("raw6")};
    write_text(sc_c.path, valid_sidecar_text());
    write_bytes(raw_c.path, std::vector<char>(23, 0));  // one byte short
    Sidecar sc = load_sidecar(sc_c.path);
    CHECK_THROWS_AS(read_raw(raw_c.path, sc), FormatError);
}

TEST_CASE("f32 raw round-trips through write_raw_f32") {
    Cleanup sc_c{tmp_path("sc7")};
    Cleanup raw_c{tmp_path("raw7")};
    std::string text = valid_sidecar_text();
    text.replace(text.find("i8"), 2, "f32");
    write_text(sc_c.path, text);
    ComplexMatrix m = testutil::random_matrix(4, 3, 50);
    write_raw_f32(raw_c.path, m);
    Sidecar sc = load_sidecar(sc_c.path);
    ComplexMatrix got = read_raw(raw_c.path, sc);
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(got.data()[i].real() == doctest::Approx(m.data()[i].real()).epsilon(1e-6));
        CHECK(got.data()[i].imag() == doctest::Approx(m.data()[i].imag()).epsilon(1e-6));
    }
}

TEST_CASE("pgm writes the exact header and round-trips") {
    Cleanup c{tmp_path("img.pgm")};
    GrayImage img(3, 2);
    img.at(0, 0) = 0;
    img.at(1, 0) = 128;
    img.at(2, 0) = 255;
    img.at(0, 1) = 1;
    img.at(1, 1) = 2;
    img.at(2, 1) = 3;
    write_pgm(c.path, img);

    std::ifstream f(c.path, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(f)),
                            std::istreambuf_iterator<char>());
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(std::string(bytes.data(), header.size()) == header);
    CHECK(static_cast<unsigned char>(bytes[header.size() + 2]) == 255);

    GrayImage got = read_pgm(c.path);
    CHECK(got == img);
}

TEST_CASE("pgm reader accepts comments and rejects bad input") {
    Cleanup c{tmp_path("img2.pgm")};
    SUBCASE("comment in header") {
        std::vector<char> bytes;
        std::string header = "P5\n# comment line\n2 1\n255\n";
        bytes.insert(bytes.end(), header.begin(), header.end());
        bytes.push_back(7);
        bytes.push_back(9);
        write_bytes(c.path, bytes);
        GrayImage img = read_pgm(c.path);
        CHECK(img.width() == 2);
        CHECK(img.at(0, 0) == 7);
        CHECK(img.at(1, 0) == 9);
    }
    SUBCASE("wrong magic") {
        write_text(c.path, "P2\n2 1\n255\n  1 2\n");
        CHECK_THROWS_AS(read_pgm(c.path), FormatError);
    }
    SUBCASE("wrong maxval") {
        std::string header = "P5\n2 1\n65535\n";
        std::vector<char> bytes(header.begin(), header.end());
        bytes.insert(bytes.end(), 4, 0);
        write_bytes(c.path, bytes);
        CHECK_THROWS_AS(read_pgm(c.path), FormatError);
    }
    SUBCASE("truncated payload") {
        std::string header = "P5\n4 4\n255\n";
        std::vector<char> bytes(header.begin(), header.end());
        bytes.insert(bytes.end(), 5, 1);
        write_bytes(c.path, bytes);
        CHECK_THROWS_AS(read_pgm(c.path), FormatError);
    }
}

TEST_CASE("complex container round-trips data and metadata") {
    Cleanup c{tmp_path("m.cimg")};
    ComplexMatrix m = testutil::random_matrix(5, 7, 333);
    m.domain = Domain::freq2d;
    m.t0 = 5.543e-3;
    m.eta0 = -0.25;
    write_complex(c.path, m);
    ComplexMatrix got = read_complex(c.path);
    CHECK(got.n_az() == 5);
    CHECK(got.n_rg() == 7);
    CHECK(got.domain == Domain::freq2d);
    CHECK(got.t0 == m.t0);
    CHECK(got.eta0 == m.eta0);
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(std::abs(got.data()[i] - m.data()[i]) < 1e-6);
}

TEST_CASE("complex container rejects corrupt files") {
    Cleanup c{tmp_path("bad.cimg")};
    SUBCASE("bad magic") {
        write_text(c.path, "definitely not a complex image file, padding padding");
        std::ofstream(c.path, std::ios::app) << std::string(64, 'x');
        CHECK_THROWS_AS(read_complex(c.path), FormatError);
    }
    SUBCASE("truncated header") {
        write_text(c.path, "SARC");
        CHECK_THROWS_AS(read_complex(c.path), FormatError);
    }
    SUBCASE("payload mismatch") {
        ComplexMatrix m = testutil::random_matrix(2, 2, 1);
        write_complex(c.path, m);
        std::ofstream(c.path, std::ios::app) << "extra";
        CHECK_THROWS_AS(read_complex(c.path), FormatError);
    }
}

TEST_CASE("scene file parses targets and rejects junk") {
    Cleanup c{tmp_path("scene.txt")};
    SUBCASE("two targets with comments") {
        write_text(c.path,
                   "# sigma_re sigma_im r0_m eta_c_s aperture_s\n"
                   "1.0 0.0 830900 0.0 0.6\n"
                   "0.5 -0.5 831200 0.1 0.6  # bright neighbor\n");
        auto targets = load_scene(c.path);
        REQUIRE(targets.size() == 2);
        CHECK(targets[0].sigma == cplx(1.0, 0.0));
        CHECK(targets[0].r0 == 830900.0);
        CHECK(targets[1].sigma == cplx(0.5, -0.5));
        CHECK(targets[1].eta_c == 0.1);
        CHECK(targets[1].aperture_time == 0.6);
    }
    SUBCASE("wrong column count") {
        write_text(c.path, "1.0 0.0 830900 0.0\n");
        CHECK_THROWS_AS(load_scene(c.path), FormatError);
    }
    SUBCASE("empty scene") {
        write_text(c.path, "# nothing\n");
        CHECK_THROWS_AS(load_scene(c.path), FormatError);
    }
}
