#ifndef TROPCYCLE_H
#define TROPCYCLE_H

/* C interface to the tropical cycle calculus. All data crosses the
 * boundary as JSON text; numbers inside documents are exact strings.
 *
 * Return codes: 0 ok, 1 internal error, 2 input error, 3 precondition
 * failure. On every call that yields a response document the caller owns
 * the returned string and must release it with trop_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct trop_ctx trop_ctx;

/* Create / destroy an execution context. A context is cheap and holds
 * only the last error message; it is not thread-safe. */
trop_ctx* trop_ctx_new(void);
void trop_ctx_free(trop_ctx* ctx);

/* Run one command. request_json is a document
 *   {"inputs": [{"name": ..., "doc": ...}, ...], "options": {...}, "seed": "..."}
 * and *response_json receives {"status", "payload", "diagnostics"}.
 * The response is produced for every return code when possible. */
int trop_run(trop_ctx* ctx, const char* command, const char* request_json,
             char** response_json);

/* Release a string returned through this interface. */
void trop_string_free(char* s);

/* Message of the most recent failure on this context, or "" if none.
 * The pointer stays valid until the next call on the context. */
const char* trop_last_error(const trop_ctx* ctx);

#ifdef __cplusplus
}
#endif

#endif /* TROPCYCLE_H */
