package app.ui;

import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JButton;

public class ZoomListener implements ActionListener {
    private JButton plus;
    private JButton minus;

    public void actionPerformed(ActionEvent e) {
        Object src = e.getSource();
        if (src == plus) {
            canvas.scale(1.25);
        } else if (src == minus) {
            canvas.scale(0.8);
        }
    }
}
