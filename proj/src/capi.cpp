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

#include "uqadjoint/uqadjoint.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "uqadjoint/error.hpp"
#include "uqadjoint/verify.hpp"

struct uqa_context {
    int l = 0;
    std::unique_ptr<uqa::cyclotomic::CyclotomicField> field;
    std::unique_ptr<uqa::decomp::AdjointContext> adjoint;

    const uqa::decomp::AdjointContext& ad() {
        if (!adjoint) adjoint = std::make_unique<uqa::decomp::AdjointContext>(*field);
        return *adjoint;
    }
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
uqa_status guarded(Fn&& fn) {
    last_error.clear();
    try {
        fn();
        return UQA_OK;
    } catch (const uqa::Error& e) {
        last_error = e.what();
        return static_cast<uqa_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return UQA_OUT_OF_MEMORY;
    } catch (const std::exception& e) {
        last_error = e.what();
        return UQA_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) uqa::fail(uqa::ErrorCode::InvalidArgument, what);
}

std::vector<std::string> split_csv(const char* s) {
    std::vector<std::string> out;
    if (!s) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

extern "C" {

const char* uqa_version(void) { return "0.1.0"; }

const char* uqa_last_error(void) { return last_error.c_str(); }

void uqa_string_free(char* s) { std::free(s); }

uqa_status uqa_max_l(int allow_large, int* out) {
    return guarded([&] {
        require(out, "null output pointer");
        *out = uqa::verify::max_supported_l(allow_large != 0);
    });
}

uqa_status uqa_context_new(int l, int allow_large, uqa_context** out) {
    return guarded([&] {
        require(out, "null output pointer");
        *out = nullptr;
        uqa::verify::require_supported_l(l, uqa::verify::max_supported_l(allow_large != 0));
        auto ctx = std::make_unique<uqa_context>();
        ctx->l = l;
        ctx->field = std::make_unique<uqa::cyclotomic::CyclotomicField>(l);
        *out = ctx.release();
    });
}

void uqa_context_free(uqa_context* ctx) { delete ctx; }

int uqa_context_l(const uqa_context* ctx) { return ctx ? ctx->l : 0; }

uqa_status uqa_check_names(char** json_out) {
    return guarded([&] {
        require(json_out, "null output pointer");
        *json_out = dup(nlohmann::json(uqa::verify::check_names()).dump());
    });
}

uqa_status uqa_verify(uqa_context* ctx, const char* checks, int certificates, int* all_passed, char** json_out) {
    return guarded([&] {
        require(ctx && json_out, "null argument");
        uqa::verify::VerifyOptions opts;
        opts.checks = split_csv(checks);
        opts.certificates = certificates != 0;
        const auto report = uqa::verify::run_verification(ctx->ad(), opts);
        if (all_passed) *all_passed = report.passed() ? 1 : 0;
        *json_out = dup(uqa::verify::report_to_json(report));
    });
}

uqa_status uqa_report_text(const char* report_json, char** text_out) {
    return guarded([&] {
        require(report_json && text_out, "null argument");
        *text_out = dup(uqa::verify::report_to_text(uqa::verify::report_from_json(report_json)));
    });
}

uqa_status uqa_expected_table(int l, char** json_out) {
    return guarded([&] {
        require(json_out, "null output pointer");
        *json_out = dup(uqa::decomp::decomposition_json(uqa::verify::expected_multiplicities(l).entries));
    });
}

uqa_status uqa_decompose(uqa_context* ctx, const char* target, int j, char** json_out) {
    return guarded([&] {
        require(ctx && target && json_out, "null argument");
        const std::string t = target;
        uqa::decomp::Decomposition d;
        if (t == "ad") {
            d = uqa::decomp::decompose_adjoint(ctx->ad());
        } else if (t == "ad-block") {
            d = uqa::decomp::decompose_block(ctx->ad(), j);
        } else {
            uqa::fail(uqa::ErrorCode::InvalidArgument, "target must be ad or ad-block, got " + t);
        }
        *json_out = dup(uqa::decomp::decomposition_json(d.summands));
    });
}

uqa_status uqa_matrix(uqa_context* ctx, const char* kind, int j, int k, char** json_out) {
    return guarded([&] {
        require(ctx && kind && json_out, "null argument");
        using uqa::verify::MatrixKind;
        const MatrixKind mk = uqa::verify::matrix_kind_from_string(kind);
        const auto& f = *ctx->field;
        const uqa::verify::PaperMatrix m = mk == MatrixKind::A   ? uqa::verify::build_A(f, j)
                                           : mk == MatrixKind::D ? uqa::verify::build_D(f, j, k)
                                                                 : uqa::verify::build_Aprime(f, j);
        nlohmann::json out = {{"kind", uqa::verify::to_string(mk)}, {"l", ctx->l}, {"j", j}};
        if (m.k) out["k"] = *m.k;
        out["entries"] = uqa::verify::matrix_to_json(f, m.entries);
        *json_out = dup(out.dump());
    });
}

uqa_status uqa_module_json(uqa_context* ctx, int block_j, char** json_out) {
    return guarded([&] {
        require(ctx && json_out, "null argument");
        const auto& a = ctx->ad();
        const auto& m = block_j < -1 ? a.module() : a.block(block_j).sub.module;
        *json_out = dup(uqa::modcat::module_to_json(m));
    });
}

uqa_status uqa_structure_constants(uqa_context* ctx, char** json_out) {
    return guarded([&] {
        require(ctx && json_out, "null argument");
        *json_out = dup(uqa::smallqg::structure_constants_json(ctx->ad().algebra()));
    });
}

}  // extern "C"
