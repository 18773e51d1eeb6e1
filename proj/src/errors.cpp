#include "bandext/errors.hpp"

#include <sstream>

namespace bandext {

namespace {

std::string near_singular_message(double condition, double threshold)
{
    std::ostringstream os;
    os << "system is near singular: condition estimate " << condition << " exceeds " << threshold
       << " with rho = 0; use rho > 0 or allow the unregularized solve explicitly";
    return os.str();
}

} // namespace

NearSingular::NearSingular(double condition, double threshold)
    : Error(near_singular_message(condition, threshold)), condition_(condition), threshold_(threshold)
{
}

TooFewKnots::TooFewKnots(std::size_t have, std::size_t need)
    : Error("interpolant needs at least " + std::to_string(need) + " knots, got " + std::to_string(have))
{
}

TrialFailure::TrialFailure(std::uint64_t trial_id, const std::string& what)
    : Error("trial " + std::to_string(trial_id) + " failed: " + what), trial_id_(trial_id)
{
}

} // namespace bandext
