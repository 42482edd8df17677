#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rootstring/io.hpp"

using namespace rootstring;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Parses text expecting a rejection; returns the diagnostic.
parse_error rejection(const std::string& text, parse_options options = {}) {
    try {
        (void)parse_cartan(text, options);
    } catch (const parse_error& e) {
        return e;
    }
    ADD_FAILURE() << "document was accepted:\n" << text;
    return parse_error(diag::malformed_document, 0, 0, "accepted");
}

} // namespace

TEST(ParseCartan, PrimeFieldExample) {
    const auto datum = parse_cartan("{characteristic: 3, matrix: [[0,1],[1,0]], parities: [\"ev\",\"ev\"]}");
    EXPECT_EQ(datum.rank(), 2u);
    EXPECT_EQ(datum.ground().spec(), field_spec::prime_field(3));
    EXPECT_EQ(datum.entry(0, 1), datum.ground().one());
    EXPECT_EQ(datum.parity_of(1), parity::even);
}

TEST(ParseCartan, JsonDocumentsAreAccepted) {
    const auto datum = parse_cartan(R"({"characteristic": 5, "matrix": [[2, -1], [7, 2]], "parities": ["od", "ev"]})");
    EXPECT_EQ(datum.entry(0, 1), datum.ground().integer(4));
    EXPECT_EQ(datum.entry(1, 0), datum.ground().integer(2));
    EXPECT_EQ(datum.parity_of(0), parity::odd);
}

TEST(ParseCartan, ExtensionFieldExample) {
    const auto datum = parse_cartan(
        "characteristic: 2\n"
        "extension: {degree: 2, modulus: [1, 1, 1]}\n"
        "matrix: [[[0, 1], 1], [1, 0]]\n"
        "parities: [ev, od]\n");
    EXPECT_EQ(datum.ground().spec(), field_spec::extension(2, {1, 1, 1}));
    EXPECT_EQ(datum.entry(0, 0), datum.ground().generator());
    EXPECT_EQ(datum.entry(0, 1), datum.ground().one());
}

TEST(ParseCartan, RationalEntries) {
    const auto datum = parse_cartan("characteristic: 0\nmatrix: [[2, \"-3/2\"], [\"4/6\", 0]]\nparities: [ev, ev]\n");
    EXPECT_EQ(datum.entry(0, 1).as_rational(), rational(-3, 2));
    EXPECT_EQ(datum.entry(1, 0).as_rational(), rational(2, 3));
    EXPECT_EQ(datum.entry(0, 0).as_rational(), rational(2));
}

TEST(ParseCartan, DiagnosticsCarryCodeAndPosition) {
    struct case_t {
        std::string text;
        diag kind;
        std::size_t line;
    };
    const std::vector<case_t> cases{
        {"characteristic: 4\nmatrix: [[0]]\nparities: [ev]\n", diag::bad_characteristic, 1},
        {"characteristic: -3\nmatrix: [[0]]\nparities: [ev]\n", diag::bad_characteristic, 1},
        {"matrix: [[0]]\nparities: [ev]\n", diag::missing_key, 1},
        {"characteristic: 3\nmatrix: [[0]]\nparities: [ev]\ncolour: red\n", diag::unknown_key, 4},
        {"characteristic: 2\nextension:\n  degree: 2\n  modulus: [1, 0, 1]\nmatrix: [[0]]\nparities: [ev]\n",
         diag::reducible_modulus, 4},
        {"characteristic: 3\nextension:\n  degree: 2\n  modulus: [1, 0, 2]\nmatrix: [[0]]\nparities: [ev]\n",
         diag::bad_extension, 4},
        {"characteristic: 3\nextension:\n  degree: 3\n  modulus: [1, 0, 1]\nmatrix: [[0]]\nparities: [ev]\n",
         diag::bad_extension, 4},
        {"characteristic: 3\nextension:\n  degree: 9\n  modulus: [1]\nmatrix: [[0]]\nparities: [ev]\n",
         diag::bad_extension, 3},
        {"characteristic: 0\nextension:\n  degree: 2\n  modulus: [1, 0, 1]\nmatrix: [[0]]\nparities: [ev]\n",
         diag::bad_extension, 3},
        {"characteristic: 3\nmatrix:\n  - [0, 1]\n  - [1]\nparities: [ev, ev]\n", diag::ragged_matrix, 4},
        {"characteristic: 3\nmatrix: []\nparities: []\n", diag::ragged_matrix, 2},
        {"characteristic: 3\nmatrix:\n  - [0, 1]\n  - [1, 0]\nparities: [ev]\n", diag::parity_mismatch, 5},
        {"characteristic: 3\nmatrix: [[0]]\nparities: [even]\n", diag::bad_parity, 3},
        {"characteristic: 3\nmatrix:\n  - [0, x]\n  - [1, 0]\nparities: [ev, ev]\n", diag::bad_entry, 3},
        {"characteristic: 0\nmatrix: [[\"1/0\"]]\nparities: [ev]\n", diag::bad_entry, 2},
        {"characteristic: 3\nmatrix: [[[0, 1]]]\nparities: [ev]\n", diag::bad_entry, 2},
        {"characteristic: 3\nmatrix: [[0, 1]\nparities: [ev]\n", diag::malformed_document, 0},
        {"- 1\n- 2\n", diag::malformed_document, 1},
    };
    for (const auto& c : cases) {
        const auto e = rejection(c.text);
        EXPECT_EQ(e.kind(), c.kind) << c.text << e.what();
        EXPECT_EQ(e.code(), errc::validation);
        if (c.line != 0) {
            EXPECT_EQ(e.line(), c.line) << c.text << e.what();
        }
        EXPECT_NE(std::string(e.what()).find(diag_code(c.kind)), std::string::npos);
    }
}

TEST(ParseCartan, SyntaxErrorsReportLineAndColumn) {
    const auto e = rejection("characteristic: 3\nmatrix: [[0, 1], [1, 0]\nparities: [ev, ev]\n");
    EXPECT_EQ(e.kind(), diag::malformed_document);
    EXPECT_GE(e.line(), 2u);
    EXPECT_GE(e.column(), 1u);
}

TEST(ParseCartan, DiagnosticPointsAtOffendingColumn) {
    const auto e = rejection("characteristic: 5\nmatrix:\n  - [0, 1]\n  - [1, abc]\nparities: [ev, ev]\n");
    EXPECT_EQ(e.kind(), diag::bad_entry);
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 9u);
}

TEST(ParseCartan, StrictModeRejectsUnreducedEntries) {
    const parse_options strict{true};
    EXPECT_EQ(rejection("characteristic: 3\nmatrix: [[5]]\nparities: [ev]\n", strict).kind(), diag::unreduced_entry);
    EXPECT_EQ(rejection("characteristic: 3\nmatrix: [[-1]]\nparities: [ev]\n", strict).kind(), diag::unreduced_entry);
    EXPECT_EQ(rejection("characteristic: 0\nmatrix: [[\"2/4\"]]\nparities: [ev]\n", strict).kind(), diag::unreduced_entry);
    EXPECT_EQ(rejection("characteristic: 0\nmatrix: [[\"1/-2\"]]\nparities: [ev]\n", strict).kind(), diag::unreduced_entry);
    const std::string f9 = "characteristic: 3\nextension: {degree: 2, modulus: [1, 0, 1]}\n";
    EXPECT_EQ(rejection(f9 + "matrix: [[[1]]]\nparities: [ev]\n", strict).kind(), diag::unreduced_entry);
    EXPECT_EQ(rejection(f9 + "matrix: [[[1, 3]]]\nparities: [ev]\n", strict).kind(), diag::unreduced_entry);

    // the same documents are reduced in the default mode
    EXPECT_EQ(parse_cartan("characteristic: 3\nmatrix: [[5]]\nparities: [ev]\n").entry(0, 0).coeffs()[0], 2u);
    EXPECT_EQ(parse_cartan(f9 + "matrix: [[[1, 3]]]\nparities: [ev]\n").entry(0, 0).coeffs(),
              (std::vector<residue>{1, 0}));
}

TEST(SerializeCartan, SamplesAreCanonical) {
    for (const char* name : {"f3_swap.yaml", "f9_odd.yaml", "q_g2.yaml", "q_infinite.yaml"}) {
        const auto path = std::filesystem::path(ROOTSTRING_SAMPLES_DIR) / name;
        const auto text = read_file(path);
        const auto datum = parse_cartan(text, parse_options{true});
        EXPECT_EQ(serialize_cartan(datum), text) << name;
    }
}

TEST(SerializeCartan, RoundTripOnRandomData) {
    std::mt19937 rng(99);
    const std::vector<field> fields{field(field_spec::prime_field(2)), field(field_spec::prime_field(7)),
                                    field(field_spec::extension(2, {1, 1, 1})),
                                    field(field_spec::extension(5, first_irreducible(5, 3))),
                                    field(field_spec::rationals())};
    std::uniform_int_distribution<std::int64_t> small(-20, 20);
    std::uniform_int_distribution<std::int64_t> den(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const field& f = fields[static_cast<std::size_t>(trial) % fields.size()];
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        std::vector<field_element> entries;
        for (std::size_t i = 0; i < n * n; ++i) {
            if (f.spec().is_rational()) {
                entries.push_back(f.from_rational(rational(small(rng), den(rng))));
            } else {
                std::vector<residue> c;
                for (std::size_t d = 0; d < f.degree(); ++d)
                    c.push_back(static_cast<residue>(lift(small(rng), f.characteristic())));
                entries.push_back(f.element(c));
            }
        }
        std::vector<parity> parities;
        for (std::size_t i = 0; i < n; ++i) parities.push_back(small(rng) % 2 ? parity::odd : parity::even);
        const cartan_datum datum(f, std::move(entries), std::move(parities));

        const auto text = serialize_cartan(datum);
        const auto back = parse_cartan(text, parse_options{true});
        EXPECT_EQ(back, datum) << text;
        EXPECT_EQ(serialize_cartan(back), text);
    }
}

TEST(LoadCartan, MissingFile) {
    EXPECT_THROW((void)load_cartan("/nonexistent/cartan.yaml"), error);
}

TEST(ReportJson, Fragments) {
    const field q(field_spec::rationals());
    EXPECT_EQ(to_json(q.from_rational(rational(-3, 2))), "-3/2");
    EXPECT_EQ(to_json(q.integer(7)), 7);
    const field f9(field_spec::extension(3, {1, 0, 1}));
    EXPECT_EQ(to_json(f9.generator()).dump(), "[0,1]");
    EXPECT_EQ(to_json(b_value::infinity()), "inf");
    EXPECT_EQ(to_json(std::optional<b_value>{}).dump(), "null");
    EXPECT_EQ(to_json(f9.spec()).dump(), R"({"characteristic":3,"degree":2,"modulus":[1,0,1]})");
}
