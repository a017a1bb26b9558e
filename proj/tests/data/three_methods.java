import java.util.Comparator;

public class Three {
    public int first(int x) {
        return x + 1;
    }

    public Comparator<String> second() {
        return new Comparator<String>() {
            @Override
            public int compare(String a, String b) {
                return a.length() - b.length();
            }
        };
    }

    public void third() {
        System.out.println("third");
    }
}
