#include "secretscan/patterns.hpp"

namespace secretscan {

// A representative slice of provider detectors plus generic assignment and
// high-entropy rules. The generic rules are deliberately broad; the classifier
// is what separates real credentials from look-alikes.
const std::vector<PatternSpec>& builtin_pattern_specs() {
    static const std::vector<PatternSpec> specs = {
        {"aws/access_key_id", R"re(\b(?:AKIA|ASIA|AGPA|AIDA|AROA|ANPA|ANVA|AIPA)[0-9A-Z]{16}\b)re", 0},
        {"aws/secret_access_key", R"re((?i)aws_?secret_?(?:access_?)?key\s*[:=]\s*([A-Za-z0-9/+=]{40}))re", 1},
        {"github/personal_access_token", R"re(\bghp_[A-Za-z0-9]{36}\b)re", 0},
        {"github/oauth_token", R"re(\bgho_[A-Za-z0-9]{36}\b)re", 0},
        {"github/app_token", R"re(\b(?:ghu|ghs)_[A-Za-z0-9]{36}\b)re", 0},
        {"github/refresh_token", R"re(\bghr_[A-Za-z0-9]{36}\b)re", 0},
        {"github/fine_grained_pat", R"re(\bgithub_pat_[A-Za-z0-9_]{82}\b)re", 0},
        {"gitlab/personal_access_token", R"re(\bglpat-[A-Za-z0-9_\-]{20}(?![A-Za-z0-9_\-]))re", 0},
        {"slack/token", R"re(\bxox[baprs]-[0-9A-Za-z\-]{10,72})re", 0},
        {"slack/webhook", R"re(https://hooks\.slack\.com/services/T[A-Za-z0-9_]+/B[A-Za-z0-9_]+/[A-Za-z0-9_]+)re", 0},
        {"google/api_key", R"re(\bAIza[0-9A-Za-z_\-]{35}(?![0-9A-Za-z_\-]))re", 0},
        {"google/oauth_access_token", R"re(\bya29\.[0-9A-Za-z_\-]{20,})re", 0},
        {"google/oauth_client_secret", R"re(\bGOCSPX-[0-9A-Za-z_\-]{28})re", 0},
        {"stripe/live_key", R"re(\b(?:sk|rk)_live_[0-9a-zA-Z]{24,99}\b)re", 0},
        {"stripe/test_key", R"re(\b(?:sk|pk)_test_[0-9a-zA-Z]{24,99}\b)re", 0},
        {"twilio/api_key", R"re(\bSK[0-9a-fA-F]{32}\b)re", 0},
        {"sendgrid/api_key", R"re(\bSG\.[A-Za-z0-9_\-]{22}\.[A-Za-z0-9_\-]{43})re", 0},
        {"mailgun/api_key", R"re(\bkey-[0-9a-zA-Z]{32}\b)re", 0},
        {"npm/access_token", R"re(\bnpm_[A-Za-z0-9]{36}\b)re", 0},
        {"pypi/upload_token", R"re(\bpypi-AgEIcHlwaS5vcmc[A-Za-z0-9_\-]{50,})re", 0},
        {"private_key/header", R"re(-----BEGIN (?:RSA |EC |DSA |OPENSSH |PGP |ENCRYPTED )?PRIVATE KEY(?: BLOCK)?-----)re", 0},
        {"jwt/token", R"re(\beyJ[A-Za-z0-9_\-]{10,}\.eyJ[A-Za-z0-9_\-]{10,}\.[A-Za-z0-9_\-]{10,})re", 0},
        {"facebook/access_token", R"re(\bEAACEdEose0cBA[0-9A-Za-z]+)re", 0},
        {"square/access_token", R"re(\bsq0atp-[0-9A-Za-z_\-]{22}(?![0-9A-Za-z_\-]))re", 0},
        {"shopify/access_token", R"re(\bshp(?:at|ca|pa|ss)_[a-fA-F0-9]{32}\b)re", 0},
        {"telegram/bot_token", R"re(\b[0-9]{8,10}:AA[0-9A-Za-z_\-]{33}(?![0-9A-Za-z_\-]))re", 0},
        {"azure/storage_account_key", R"re(AccountKey=([A-Za-z0-9+/=]{86,88}))re", 1},
        {"heroku/api_key",
         R"re((?i)heroku[\w\s:=-]{0,20}\b([0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12})\b)re", 1},
        {"discord/bot_token", R"re(\b[MN][A-Za-z\d]{23}\.[\w-]{6}\.[\w-]{27}\b)re", 0},
        {"generic/password_assignment", R"re((?i)\b(?:password|passwd|pwd|pass)\s*[:=]\s*([^\s,;]{4,}))re", 1},
        {"generic/api_key_assignment",
         R"re((?i)\b(?:api[_-]?key|access[_-]?key|client[_-]?secret|secret[_-]?key|secret|auth[_-]?token|access[_-]?token|token)\s*[:=]\s*([A-Za-z0-9_\-+/=]{16,}))re",
         1},
        {"generic/bearer_token", R"re((?i)\bbearer\s+([A-Za-z0-9_\-.=]{20,}))re", 1},
        {"generic/basic_auth_url", R"re(\b[a-zA-Z][a-zA-Z0-9+.\-]{2,9}://[^/\s:@]{3,20}:([^/\s:@]{3,40})@[\w.\-]+)re", 1},
        {"generic/hex_secret", R"re(\b[a-f0-9]{32,64}\b)re", 0},
    };
    return specs;
}

PatternRegistry builtin_patterns() { return compile_patterns(builtin_pattern_specs()); }

}  // namespace secretscan
