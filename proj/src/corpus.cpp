#include "fontrec/glyphgen.hpp"

namespace fontrec {

// Bundled rendering corpus: 1,000 common English words, lowercase a-z only.
const std::vector<std::string>& corpus_words() {
  static const std::vector<std::string> words = {
    "about", "above", "across", "action", "active", "actor", "actual", "adapt",
    "add", "added", "advance", "advice", "afford", "after", "again", "against",
    "age", "agent", "agree", "ahead", "air", "alarm", "album", "alert", "alike",
    "alive", "allow", "almost", "alone", "along", "aloud", "already", "also",
    "alter", "always", "amber", "among", "amount", "anchor", "ancient", "anger",
    "angle", "angry", "animal", "ankle", "annual", "answer", "antique", "anxious",
    "any", "apart", "appeal", "apple", "apply", "april", "area", "argue", "arise",
    "arm", "army", "around", "arrange", "arrive", "arrow", "art", "artist", "aside",
    "ask", "asleep", "aspect", "assist", "assume", "attach", "attack", "attempt",
    "attend", "august", "aunt", "author", "autumn", "avenue", "avoid", "awake",
    "award", "aware", "away", "awful", "back", "bacon", "badge", "bake", "balance",
    "ball", "banana", "band", "bank", "banner", "bare", "bargain", "barrel",
    "base", "basic", "basket", "battle", "beach", "beam", "bean", "bear", "beard",
    "beast", "beat", "beauty", "became", "become", "bed", "bedroom", "been",
    "beef", "before", "began", "begin", "behalf", "behave", "behind", "being",
    "believe", "bell", "belong", "below", "belt", "bench", "bend", "beneath",
    "benefit", "berry", "beside", "best", "better", "between", "beyond", "bicycle",
    "big", "bird", "birth", "bitter", "black", "blade", "blame", "blank", "blanket",
    "blast", "blaze", "bleed", "blend", "bless", "blind", "block", "blood", "bloom",
    "blow", "blue", "board", "boast", "boat", "body", "boil", "bold", "bone",
    "bonus", "book", "boost", "boot", "border", "borrow", "boss", "both", "bottle",
    "bottom", "bought", "bounce", "bound", "bowl", "box", "brain", "branch",
    "brave", "bread", "break", "breath", "breeze", "brick", "bridge", "brief",
    "bright", "bring", "broad", "broken", "bronze", "brook", "broom", "brother",
    "brought", "brown", "brush", "bubble", "bucket", "budget", "build", "bundle",
    "burden", "burn", "burst", "bury", "bus", "bush", "busy", "butter", "button",
    "buyer", "cabin", "cable", "cake", "call", "calm", "came", "camera", "camp",
    "can", "canal", "candle", "candy", "canvas", "canyon", "capable", "capital",
    "captain", "capture", "carbon", "card", "care", "career", "careful", "cargo",
    "carpet", "carry", "cart", "carve", "case", "cast", "castle", "casual", "cat",
    "catch", "cattle", "caught", "cause", "caution", "cave", "cease", "ceiling",
    "cell", "cellar", "census", "center", "central", "century", "cereal", "certain",
    "chain", "chair", "chalk", "chamber", "chance", "change", "channel", "chapter",
    "charge", "charm", "chart", "chase", "cheap", "check", "cheese", "chest",
    "chicken", "chief", "child", "chimney", "choice", "choose", "chorus", "chose",
    "church", "circle", "citizen", "city", "civil", "claim", "clash", "class",
    "clause", "clay", "clean", "clear", "clerk", "clever", "click", "client",
    "cliff", "climate", "climb", "clinic", "clock", "close", "closet", "cloth",
    "cloud", "clown", "club", "clue", "cluster", "coach", "coal", "coast", "coat",
    "code", "coffee", "coin", "cold", "collar", "collect", "college", "color",
    "column", "combine", "come", "comfort", "comic", "command", "comment", "common",
    "compare", "compass", "compete", "complex", "concern", "concert", "conduct",
    "confirm", "connect", "consider", "consist", "contact", "contain", "content",
    "contest", "context", "control", "convince", "cook", "cool", "copper", "copy",
    "coral", "cord", "core", "corn", "corner", "correct", "cost", "cottage",
    "cotton", "couch", "could", "council", "count", "country", "county", "couple",
    "courage", "course", "court", "cousin", "cover", "crack", "craft", "crash",
    "crawl", "crazy", "cream", "create", "credit", "creek", "crew", "cricket",
    "crime", "crisp", "critic", "crop", "cross", "crowd", "crown", "cruel", "cruise",
    "crumb", "crush", "crystal", "culture", "cup", "curious", "current", "curtain",
    "curve", "cushion", "custom", "cycle", "daily", "dairy", "damage", "dance",
    "danger", "dare", "dark", "data", "dawn", "dear", "debate", "debt", "decade",
    "december", "decent", "decide", "deck", "declare", "deep", "deer", "defeat",
    "defend", "define", "degree", "delay", "deliver", "demand", "denial", "dental",
    "deny", "depend", "deposit", "depth", "derive", "describe", "desert", "design",
    "desire", "desk", "detail", "detect", "develop", "device", "devote", "diagram",
    "dial", "diamond", "diary", "dice", "differ", "digital", "dinner", "direct",
    "dirt", "discuss", "dish", "distance", "divide", "doctor", "dollar", "domain",
    "donkey", "door", "double", "doubt", "dough", "down", "dozen", "draft", "dragon",
    "drain", "drama", "draw", "dream", "dress", "drift", "drill", "drink", "drive",
    "drop", "drove", "drum", "dry", "duck", "due", "dull", "during", "dust",
    "duty", "each", "eager", "eagleear", "early", "earn", "earth", "ease", "east",
    "easy", "eat", "echo", "edge", "edit", "editor", "effect", "effort", "eight",
    "either", "elbow", "elder", "electric", "element", "eleven", "elseember",
    "emerge", "empire", "employ", "empty", "enable", "end", "enemy", "energy",
    "engage", "engine", "enjoy", "enough", "ensure", "enter", "entire", "entry",
    "envelope", "equal", "equip", "era", "error", "escape", "essay", "estate",
    "even", "evening", "event", "ever", "every", "evidence", "exact", "examine",
    "example", "exceed", "except", "exchange", "excite", "excuse", "exercise",
    "exhibit", "exist", "exit", "expand", "expect", "expense", "expert", "explain",
    "explore", "export", "expose", "express", "extend", "extra", "eye", "fabric",
    "face", "fact", "factor", "faculty", "fade", "fail", "faint", "fair", "faith",
    "fall", "false", "fame", "family", "famous", "fancy", "farm", "farmer", "fashion",
    "fast", "fatal", "father", "fault", "favor", "feature", "feed", "feel", "fellow",
    "felt", "fence", "festival", "fetch", "fever", "few", "fiber", "fiction",
    "field", "fierce", "fifteen", "fifty", "figure", "file", "fill", "film",
    "final", "find", "fine", "finger", "finish", "fire", "firm", "first", "fish",
    "fiscal", "fit", "five", "fix", "flag", "flame", "flash", "flat", "flavor",
    "flee", "fleet", "flesh", "flight", "float", "flock", "flood", "floor", "flour",
    "flow", "flower", "fluid", "flush", "fly", "foam", "focus", "fold", "folk",
    "follow", "food", "foot", "force", "forest", "forget", "fork", "form", "formal",
    "former", "fortune", "forum", "forward", "found", "four", "frame", "free",
    "freeze", "fresh", "friend", "frog", "from", "front", "frost", "frown", "fruit",
    "fuel", "full", "fun", "fund", "funny", "fur", "future", "gain", "galaxy",
    "game", "garage", "garden", "garlic", "gate", "gather", "gave", "gaze", "general",
    "gentle", "genuine", "gesture", "ghost", "giant", "gift", "ginger", "girl",
    "give", "glad", "glance", "glass", "globe", "glory", "glove", "glow", "goal",
    "goat", "gold", "golden", "good", "goose", "govern", "grab", "grace", "grade",
    "grain", "grand", "grant", "grape", "grasp", "grass", "grave", "gray", "great",
    "green", "greet", "grew", "grid", "grief", "grill", "grin", "grind", "grip",
    "grocery", "ground", "group", "grove", "grow", "growth", "guard", "guess",
    "guest", "guide", "guilt", "guitar", "habit", "hair", "half", "hall", "hammer",
    "hand", "handle", "happen", "happy", "harbor", "hard", "harm", "harsh", "harvest",
    "has", "haste", "hat", "hatch", "have", "hazard", "head", "health", "heap",
    "hear", "heart", "heat", "heavy", "hedge", "height", "held", "hello", "help",
    "hence", "herb", "here", "hero", "hidden", "hide", "high", "hill", "hint",
    "hire", "history", "hobby", "hold", "hole", "hollow", "holy", "home", "honest",
    "honey", "honor", "hood", "hook", "hope", "horizon", "horn", "horse", "hotel",
    "hour", "house", "hover", "how", "huge", "human", "humble", "humor", "hundred",
    "hunger", "hunt", "hurry", "hurt", "ice", "icon", "idea", "ideal", "iron",
    "image", "imagine", "impact", "import", "impose", "improve", "inch", "inches",
    "income", "indeed", "index", "indoor", "infant", "inform", "initial", "injury",
    "inner", "input", "inquiry", "insect", "inside", "insist", "inspect", "instead",
    "intend", "interest", "into", "invent", "invest", "invite", "involve", "island",
    "issue", "item", "ivory", "jacket", "january", "jelly", "jewel", "job", "join",
    "joint", "joke", "journal", "journey", "joy", "judge", "juice", "july", "jump",
    "june", "jungle", "junior", "just", "justice", "keen", "keep", "kept", "kettle",
    "key", "kick", "kid", "kind", "kingdom", "kitchen", "kite", "knee", "knew",
    "knife", "knock", "know", "known", "label", "labor", "lack", "ladder", "lady",
    "lake", "lamp", "land", "lane", "large", "last", "late", "later", "laugh",
    "launch", "law", "lawn", "layer", "lazy", "lead", "leader", "leaf", "league",
    "lean", "learn", "least", "leather", "leave", "lecture", "left", "legal",
    "legend", "lemon", "lend", "length", "lens", "less", "lesson", "letter",
    "level", "liberty", "library", "license", "life", "lift", "light", "like",
    "limit", "line", "linen", "link", "lion", "liquid", "list", "listen", "little",
    "live", "liver", "load", "loan", "lobby", "local", "lock", "lodge", "log",
    "logic", "lonely", "long", "look", "loop", "loose", "lord", "lose", "loss",
    "lost", "loud", "love", "lower", "loyal", "luck", "lumber", "lunar", "lunch",
    "luxury", "machine", "made", "magic", "magnet",
  };
  return words;
}

}  // namespace fontrec
