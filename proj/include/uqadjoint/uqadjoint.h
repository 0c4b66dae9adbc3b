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

#ifndef UQADJOINT_UQADJOINT_H
#define UQADJOINT_UQADJOINT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define UQA_API __attribute__((visibility("default")))
#else
#define UQA_API
#endif

/* Status codes. Nonzero values match the library's internal error kinds. */
typedef enum uqa_status {
    UQA_OK = 0,
    UQA_INVALID_L = 1,
    UQA_INVALID_ARGUMENT = 2,
    UQA_DIVISION_BY_ZERO = 3,
    UQA_CONSTRUCTION_FAILED = 4,
    UQA_UNIDENTIFIED_SUMMAND = 5,
    UQA_INCONCLUSIVE = 6,
    UQA_SIGN_INCONCLUSIVE = 7,
    UQA_NEGATIVE_MULTIPLICITY = 8,
    UQA_INTERNAL = 9,
    UQA_OUT_OF_MEMORY = 10
} uqa_status;

/* Holds Q(zeta_l), u, ad and the Casimir blocks for one l. The heavy parts
   are built on first use. Not safe for concurrent use. */
typedef struct uqa_context uqa_context;

UQA_API const char* uqa_version(void);

/* Message of the last failure on the calling thread ("" if none). */
UQA_API const char* uqa_last_error(void);

/* Frees strings returned through char** out-parameters. */
UQA_API void uqa_string_free(char* s);

/* Largest accepted l: 7, or 9 with allow_large; UQ_ADJOINT_MAX_L lowers it. */
UQA_API uqa_status uqa_max_l(int allow_large, int* out);

UQA_API uqa_status uqa_context_new(int l, int allow_large, uqa_context** out);
UQA_API void uqa_context_free(uqa_context* ctx);
UQA_API int uqa_context_l(const uqa_context* ctx);

/* JSON array of check names, in execution order. */
UQA_API uqa_status uqa_check_names(char** json_out);

/* Runs the named checks (comma separated; NULL or "" for all) and writes the
   JSON report. *all_passed is set when non-NULL. */
UQA_API uqa_status uqa_verify(uqa_context* ctx, const char* checks, int certificates, int* all_passed,
                              char** json_out);

/* Renders a JSON report as text. */
UQA_API uqa_status uqa_report_text(const char* report_json, char** text_out);

/* Expected multiplicity table, decomposition JSON format. No l cap applies. */
UQA_API uqa_status uqa_expected_table(int l, char** json_out);

/* target "ad" (j ignored) or "ad-block" with j in {-1, 0, ..., (l-3)/2}. */
UQA_API uqa_status uqa_decompose(uqa_context* ctx, const char* target, int j, char** json_out);

/* kind "A", "D" or "Aprime"; k is used for D only. JSON:
   {"kind","l","j","k"?,"entries":[[cyc,...],...]} with cyc an array of "num/den". */
UQA_API uqa_status uqa_matrix(uqa_context* ctx, const char* kind, int j, int k, char** json_out);

/* GradedModule dump {weights, dims, E_blocks, F_blocks} of ad or of a block
   (block_j < -1 selects all of ad). */
UQA_API uqa_status uqa_module_json(uqa_context* ctx, int block_j, char** json_out);

/* Structure constants of u as JSON (l^6 products). */
UQA_API uqa_status uqa_structure_constants(uqa_context* ctx, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* UQADJOINT_UQADJOINT_H */
