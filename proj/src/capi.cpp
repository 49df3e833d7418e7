#include "tropcycle.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "io/commands.hpp"

struct trop_ctx {
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

trop_ctx* trop_ctx_new(void) {
  try {
    return new trop_ctx{};
  } catch (...) {
    return nullptr;
  }
}

void trop_ctx_free(trop_ctx* ctx) { delete ctx; }

int trop_run(trop_ctx* ctx, const char* command, const char* request_json,
             char** response_json) {
  if (response_json) *response_json = nullptr;
  if (!ctx) return 1;
  ctx->last_error.clear();
  if (!command || !request_json || !response_json) {
    ctx->last_error = "null argument";
    return 2;
  }
  try {
    trop::Json request = trop::Json::parse(request_json, nullptr, true);
    trop::Json response;
    int code = trop::run_command(command, request, response);
    if (code != 0 && response.contains("diagnostics") && !response["diagnostics"].empty())
      ctx->last_error = response["diagnostics"].front().get<std::string>();
    *response_json = dup_string(trop::dump_canonical(response));
    if (!*response_json) {
      ctx->last_error = "out of memory";
      return 1;
    }
    return code;
  } catch (const trop::Json::parse_error& e) {
    ctx->last_error = std::string("request is not valid JSON: ") + e.what();
    trop::Json response{{"status", "error"},
                        {"payload", trop::Json::object()},
                        {"diagnostics", {ctx->last_error}}};
    *response_json = dup_string(trop::dump_canonical(response));
    return 2;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return 1;
  } catch (...) {
    ctx->last_error = "unknown failure";
    return 1;
  }
}

void trop_string_free(char* s) { std::free(s); }

const char* trop_last_error(const trop_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

}  // extern "C"
