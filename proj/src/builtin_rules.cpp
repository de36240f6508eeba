#include "secretscan/preprocess.hpp"

namespace secretscan {

// Patterns are kept as written for Python's `re`; the two URL rules run ahead
// of the dotted-package rule so that host names reach them intact.
const std::vector<RuleSpec>& builtin_rule_specs() {
    static const std::vector<RuleSpec> specs = {
        {"quotation_marks", R"re(['"\\|])re", 1},
        {"directory_list", R"re(drwx[-\s]*\d+\s+\w+\s+\w+\s+\d+\s+\w+\s+\d+\s+[0-9a-fA-F-]+.*)re", 2},
        {"shell_code", R"re(```shell([^`]+)```)re", 3},
        {"shell_code_quoted", R"re(``` shell \s*"([^"]*)" \s*```)re", 4},
        {"saved_game", R"re(<details><summary> Saved game </summary>\n\n```(.*?)```)re", 5},
        {"url_fragment", R"re(https?://[^\s#]+#[A-Za-z0-9\-\=\+]+)re", 6},
        {"url", R"re(http[s]?://(?:[a-zA-Z]|[0-9]|[$-_@.&+]|[!*\\(\\).]|(?:%[0-9a-fA-F][0-9a-fA-F]))+)re", 7},
        {"packages", R"re((\w+\.)+\w+)re", 8},
        {"java_stack_trace", R"re(at\s[\w.$]+\.([\w]+)\(([^:]+:\d+)\))re", 9},
        {"commit_id", R"re(commit[ ]?(?:id)?[ ]?[:]?[ ]?([0-9a-f]{40})\b)re", 10},
        {"file_path", R"re(/[\w/. :-]+)re", 11},
        {"file_path_segments", R"re((/[^/\s]+)+)re", 12},
        {"sha256", R"re(sha256\s*[:]?[=]?\s*[a-fA-F0-9]{64})re", 13},
        {"git_tree_sha1", R"re(git-tree-sha1\s*=\s*[a-fA-F0-9]+)re", 14},
        {"build_id", R"re(build-id\s*[:]?[=]?\s*([a-fA-F0-9]+))re", 15},
        {"uuid_list", R"re(([0-9a-fA-F-]+\s*,\s*[0-9a-fA-F-]+\s*,\s*[0-9a-fA-F-]+))re", 16},
        {"guid_list", R"re(GUIDs:\s+([0-9a-fA-F-]+\s+[0-9a-fA-F-]+\s+[0-9a-fA-F-]+))re", 17},
        {"event_id", R"re(<([^>]+)>)re", 18},
        {"labelled_uuid",
         R"re((?:UUID|GUID|version|id)[\\=:"'\s]*\b[a-fA-F0-9]{8}-[a-fA-F0-9]{4}-[a-fA-F0-9]{4}-[a-fA-F0-9]{4}-[a-fA-F0-9]{12}\b)re",
         19},
        {"labelled_hex", R"re((?:data|address|id)[\\=:"'\s]*\b0x[0-9a-fA-F]+\b)re", 20},
        {"screenshot", R"re(Screenshot_(\d{4}[_\-]\d{2}[_\-]\d{2}[_\-]\d{2}[_\-]\d{2}))re", 21},
    };
    return specs;
}

RuleSet builtin_rules() { return compile_rules(builtin_rule_specs()); }

}  // namespace secretscan
