#ifndef OSLASH_H
#define OSLASH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define OSL_API __attribute__((visibility("default")))
#else
#define OSL_API
#endif

/* Status codes. OSL_NOT_CERTIFIED means the computation finished but a
   certification check failed; the report is still produced. */
typedef enum {
    OSL_OK = 0,
    OSL_NOT_CERTIFIED = 1,
    OSL_INPUT_ERROR = 2,
    OSL_RESOURCE_ERROR = 3,
    OSL_INTERNAL_ERROR = 4
} osl_status;

typedef struct osl_gadget osl_gadget;

OSL_API const char* osl_version(void);

/* Message of the last failing call on this thread, or "" if none. */
OSL_API const char* osl_last_error(void);

/* Strings returned through char** out parameters must be released here. */
OSL_API void osl_string_free(char* s);

/* spec: "diamond:k,m", "laakso", "path:k" or a graph JSON file.
   measure: "uniform", "weighted" (Laakso) or "file"; NULL means uniform.
   st_check: 1 rejects vertices off every source-sink path, 0 only warns. */
OSL_API osl_status osl_gadget_create(const char* spec, const char* measure, int st_check, osl_gadget** out);
OSL_API void osl_gadget_destroy(osl_gadget* g);
OSL_API osl_status osl_gadget_counts(const osl_gadget* g, unsigned power, unsigned long long* vertices,
                                     unsigned long long* edges);

/* All options arguments are JSON objects; NULL means {}. Reports are JSON. */

/* format: "json" or "dot". Options: power, caps. */
OSL_API osl_status osl_build(const osl_gadget* g, const char* format, const char* options_json, char** out);

/* Options: power, delta, mode, alpha, samples, seed, caps, jobs. */
OSL_API osl_status osl_iso(const osl_gadget* g, const char* options_json, char** out_report);

/* Options: power, delta, beta, include_functions, caps, jobs. */
OSL_API osl_status osl_spectral(const osl_gadget* g, const char* options_json, char** out_report);

/* instance_json: {"points","dist","mu","nu"} or {"graph_ref"|"graph","power","mu","nu"}.
   Options: method. */
OSL_API osl_status osl_w1(const char* instance_json, const char* options_json, char** out_report);

/* Options: power, constants ("paper" | "certified"), verify_power, caps. */
OSL_API osl_status osl_bound(const osl_gadget* g, const char* options_json, char** out_report);

OSL_API osl_status osl_selftest(const char* options_json, char** out_report);

/* Header line plus one value line built from the scalar fields of a report. */
OSL_API osl_status osl_report_csv(const char* report_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
