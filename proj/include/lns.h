/* C interface to the language-exchanging process interpreter.
 *
 * A session holds configuration plus any languages registered up front;
 * run/explore/check produce a JSON-lines report (or diagnostic text) in a
 * heap string the caller releases with lns_string_free.  Every entry point
 * returns a status code; details for failures come from
 * lns_session_last_error.
 */
#ifndef LNS_H
#define LNS_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (the lns tool uses them as exit codes as well). */
#define LNS_OK 0
#define LNS_ERROR 1            /* parse, sort, io or semantic failure */
#define LNS_STEP_LIMIT 2       /* run: still reducible at the step cap */
#define LNS_BUDGET_EXHAUSTED 3 /* proof search budget exceeded */
#define LNS_STATE_LIMIT 4      /* explore: too many states */

typedef struct lns_session lns_session;

lns_session* lns_session_new(void);
void lns_session_free(lns_session* s);

/* Languages visible to scripts' `use` lines, in addition to .lnsl files
 * found next to the script or in registered directories. */
int lns_load_language_file(lns_session* s, const char* path);
int lns_load_language_text(lns_session* s, const char* name, const char* text);
void lns_add_lang_path(lns_session* s, const char* dir);

void lns_set_policy_first(lns_session* s);
void lns_set_policy_seeded(lns_session* s, unsigned long long seed);
void lns_set_max_steps(lns_session* s, unsigned long long n);
void lns_set_budget(lns_session* s, unsigned long long max_nodes,
                    unsigned int max_depth);
void lns_set_repl_bound(lns_session* s, unsigned long long n);
void lns_set_explore_limits(lns_session* s, unsigned long long max_depth,
                            unsigned long long max_states);

/* On success *out receives the report (JSON lines).  For check, *out receives
 * one diagnostic per line (empty on a clean script) and the status is
 * LNS_ERROR when diagnostics were found. */
int lns_run_file(lns_session* s, const char* path, char** out);
int lns_run_text(lns_session* s, const char* text, char** out);
int lns_explore_file(lns_session* s, const char* path, char** out);
int lns_explore_text(lns_session* s, const char* text, char** out);
int lns_check_file(lns_session* s, const char* path, char** out);
int lns_check_text(lns_session* s, const char* text, char** out);

const char* lns_session_last_error(const lns_session* s);
void lns_string_free(char* s);
const char* lns_status_name(int status);
const char* lns_version(void);

/* Embedded example corpus (file name + full text). */
int lns_corpus_count(void);
const char* lns_corpus_name(int i);
const char* lns_corpus_text(int i);

#ifdef __cplusplus
}
#endif

#endif /* LNS_H */
