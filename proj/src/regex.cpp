#include "secretscan/regex.hpp"

#include <boost/regex.hpp>

#include "secretscan/error.hpp"

namespace secretscan {

struct Regex::Impl {
    boost::regex re;
};

Regex::Regex(std::string source) : source_(std::move(source)) {
    auto impl = std::make_shared<Impl>();
    try {
        impl->re.assign(source_, boost::regex::perl | boost::regex::no_mod_s | boost::regex::no_mod_m);
    } catch (const boost::regex_error& e) {
        throw ValidationError("pattern does not compile: " + std::string(e.what()));
    }
    impl_ = std::move(impl);
}

std::size_t Regex::group_count() const { return impl_->re.mark_count(); }

void Regex::for_each_match(std::string_view text, std::size_t group,
                           const std::function<bool(const Match&, const Match&)>& visit) const {
    using It = std::string_view::const_iterator;
    const It base = text.begin();
    boost::regex_iterator<It> it(text.begin(), text.end(), impl_->re,
                                 boost::match_default | boost::match_not_dot_newline);
    try {
        for (const boost::regex_iterator<It> end; it != end; ++it) {
            const auto& m = *it;
            Match whole{static_cast<std::size_t>(m[0].first - base), static_cast<std::size_t>(m[0].second - base),
                        true};
            Match selected;
            if (group < m.size() && m[group].matched) {
                selected = {static_cast<std::size_t>(m[group].first - base),
                            static_cast<std::size_t>(m[group].second - base), true};
            }
            if (!visit(whole, selected)) return;
        }
    } catch (const std::runtime_error& e) {
        // Boost aborts pathological backtracking with an exception.
        throw Error("regex '" + source_ + "' failed during matching: " + e.what());
    }
}

}  // namespace secretscan
