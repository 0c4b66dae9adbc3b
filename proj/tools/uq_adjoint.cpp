/*
   Copyright 2026 The uq-adjoint Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// uq-adjoint: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "uqadjoint/uqadjoint.h"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

struct Failure {
    uqa_status status;
};

void check(uqa_status s) {
    if (s != UQA_OK) throw Failure{s};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    uqa_string_free(s);
    return out;
}

using ContextPtr = std::unique_ptr<uqa_context, decltype(&uqa_context_free)>;

ContextPtr open_context(int l, bool allow_large) {
    uqa_context* ctx = nullptr;
    check(uqa_context_new(l, allow_large ? 1 : 0, &ctx));
    return ContextPtr(ctx, uqa_context_free);
}

std::string label(const nlohmann::json& e) {
    return e.at("kind").get<std::string>() + "(" + std::to_string(e.at("weight").get<int>()) + ")";
}

std::string multiset_text(const std::string& js) {
    std::string out;
    for (const auto& e : nlohmann::json::parse(js)) {
        if (!out.empty()) out += " + ";
        const int k = e.at("multiplicity").get<int>();
        out += (k == 1 ? "" : std::to_string(k) + " ") + label(e);
    }
    return out.empty() ? "0" : out;
}

std::string matrix_text(const std::string& js) {
    const auto m = nlohmann::json::parse(js);
    std::string out = m.at("kind").get<std::string>() + "(j=" + std::to_string(m.at("j").get<int>());
    if (m.contains("k")) out += ", k=" + std::to_string(m.at("k").get<int>());
    out += ") at l=" + std::to_string(m.at("l").get<int>()) + ", entries as coefficients of 1, zeta, ...\n";
    for (const auto& row : m.at("entries")) {
        std::string line;
        for (const auto& c : row) {
            std::string cell;
            for (const auto& r : c) cell += (cell.empty() ? "" : ",") + r.get<std::string>();
            line += (line.empty() ? "[" : "  [") + cell + "]";
        }
        out += line + "\n";
    }
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) {
        std::cerr << "uq-adjoint: cannot write " << path << "\n";
        throw Failure{UQA_INVALID_ARGUMENT};
    }
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decomposition of the adjoint representation of u_q(sl2) at an odd root of unity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(uqa_version()));

    int l = 0;
    bool allow_large = false;
    std::string format = "json";
    std::string out_path;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--l", l, "Odd l >= 3")->required();
        sub->add_flag("--allow-large", allow_large, "Accept l = 9");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", out_path, "Write output to this file");
    };

    auto* verify = app.add_subcommand("verify", "Run the verification pipeline");
    common(verify);
    std::string checks;
    bool certificates = false;
    bool list_checks = false;
    verify->add_option("--checks", checks, "Comma-separated check names (default: all)");
    verify->add_flag("--certificates", certificates, "Also verify the split certificates of the decomposition");
    verify->add_flag("--list-checks", list_checks, "Print the check names and exit");

    auto* tables = app.add_subcommand("tables", "Expected multiplicities of the summands of ad");
    common(tables);

    auto* decompose = app.add_subcommand("decompose", "Decompose ad or one of its blocks");
    common(decompose);
    std::string target = "ad";
    int j = 0;
    decompose->add_option("--target", target, "ad or ad-block")->check(CLI::IsMember({"ad", "ad-block"}));
    decompose->add_option("--j", j, "Block label in {-1, 0, ..., (l-3)/2}");

    auto* matrix = app.add_subcommand("matrix", "The explicit matrices A(j), D(j,k), A'(j)");
    common(matrix);
    std::string kind;
    int k = 0;
    matrix->add_option("--kind", kind, "A, D or Aprime")->required()->check(CLI::IsMember({"A", "D", "Aprime"}));
    matrix->add_option("--j", j, "Block label")->required();
    matrix->add_option("--k", k, "Even k, for D");

    auto* dump = app.add_subcommand("dump", "Raw data as JSON: ad as a graded module, or structure constants");
    common(dump);
    std::string what = "module";
    dump->add_option("--what", what, "module or structure")->check(CLI::IsMember({"module", "structure"}));
    int block = -2;
    dump->add_option("--block", block, "Restrict the module dump to ad_j");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed() && list_checks) {
            char* names = nullptr;
            check(uqa_check_names(&names));
            emit(take(names), out_path);
            return 0;
        }
        if (tables->parsed()) {
            char* js = nullptr;
            check(uqa_expected_table(l, &js));
            const std::string t = take(js);
            emit(format == "json" ? t : "l = " + std::to_string(l) + ": ad = " + multiset_text(t), out_path);
            return 0;
        }
        ContextPtr ctx = open_context(l, allow_large);
        char* js = nullptr;
        if (verify->parsed()) {
            int passed = 0;
            check(uqa_verify(ctx.get(), checks.c_str(), certificates ? 1 : 0, &passed, &js));
            std::string report = take(js);
            if (format == "text") {
                char* text = nullptr;
                check(uqa_report_text(report.c_str(), &text));
                report = take(text);
            }
            emit(report, out_path);
            return passed ? 0 : kExitChecksFailed;
        }
        if (decompose->parsed()) {
            check(uqa_decompose(ctx.get(), target.c_str(), j, &js));
            const std::string d = take(js);
            emit(format == "json" ? d : multiset_text(d), out_path);
            return 0;
        }
        if (matrix->parsed()) {
            check(uqa_matrix(ctx.get(), kind.c_str(), j, k, &js));
            const std::string m = take(js);
            emit(format == "json" ? m : matrix_text(m), out_path);
            return 0;
        }
        if (dump->parsed()) {
            check(what == "module" ? uqa_module_json(ctx.get(), block, &js) : uqa_structure_constants(ctx.get(), &js));
            emit(take(js), out_path);
            return 0;
        }
    } catch (const Failure& f) {
        std::cerr << "uq-adjoint: error " << static_cast<int>(f.status) << ": " << uqa_last_error() << "\n";
        return kExitError;
    }
    return 0;
}
