#include "safesynth/common.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace safesynth
{

const char* to_string( Status status )
{
    switch ( status )
    {
    case Status::Realizable: return "REALIZABLE";
    case Status::Unrealizable: return "UNREALIZABLE";
    case Status::Timeout: return "TIMEOUT";
    case Status::NodeLimit: return "NODE_LIMIT";
    }
    return "UNKNOWN";
}

const char* to_string( Algorithm algo )
{
    switch ( algo )
    {
    case Algorithm::C: return "C";
    case Algorithm::CTL: return "C-TL";
    case Algorithm::A: return "A";
    case Algorithm::ATL: return "A-TL";
    }
    return "?";
}

std::optional< Algorithm > parse_algorithm( std::string_view text )
{
    std::string key;
    for ( char ch : text )
        if ( ch != '-' && ch != '_' )
            key.push_back( static_cast< char >( std::tolower( static_cast< unsigned char >( ch ) ) ) );
    if ( key == "c" )
        return Algorithm::C;
    if ( key == "ctl" )
        return Algorithm::CTL;
    if ( key == "a" )
        return Algorithm::A;
    if ( key == "atl" )
        return Algorithm::ATL;
    return std::nullopt;
}

} // namespace safesynth
